#pragma once

#include "surface.hpp"

#include <fstream>
#include <json.hpp>

namespace crmodel {

/// Input error located in a surface file (1-based line and column, 0 when unknown).
struct SurfaceFileError : std::invalid_argument {
  int line = 0, column = 0;
  SurfaceFileError(const std::string& msg, int l, int c)
      : std::invalid_argument(l ? "line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg : msg),
        line(l), column(c)
  {
  }
};

/// Surface document: n, K, zWeights, optional wWeights, equations "vb = expr", optional perturbation and settings.
struct SurfaceFile {
  Universe U;
  std::vector<int> zWeights;
  std::optional<std::vector<int>> wWeights;
  std::vector<Poly> equations;
  std::vector<Poly> perturbation;
  nlohmann::json settings = nlohmann::json::object();
  std::string name;

  std::vector<Poly> rhs() const
  {
    std::vector<Poly> r;
    for (int b = 0; b < U.K; ++b) r.push_back(equations[b] + perturbation[b]);
    return r;
  }

  /// Model forms with their weights (given, or read off quasi-homogeneous equations).
  SurfaceSpec spec() const
  {
    std::vector<int> m;
    if (wWeights) {
      m = *wWeights;
    }
    else {
      Weights wt(U.slots(), 0);
      for (int j = 0; j < U.n; ++j) wt[U.z(j)] = wt[U.zb(j)] = zWeights[j];
      for (int b = 0; b < U.K; ++b) {
        auto parts = gradedParts(equations[b], wt);
        bool uFree = true;
        for (auto& kv : equations[b].terms())
          for (int c = 0; c < U.K; ++c) uFree &= kv.first.e[U.u(c)] == 0;
        if (parts.size() != 1 || !uFree)
          throw std::invalid_argument("equation " + std::to_string(b + 1) +
                                      " is not quasi-homogeneous in z; give wWeights");
        m.push_back(int(parts.begin()->first));
      }
    }
    return SurfaceSpec(U, WeightSystem(zWeights, m), equations, perturbation);
  }

  template <class T>
  T setting(const std::string& key, T dflt) const
  {
    return settings.contains(key) ? settings.at(key).get<T>() : dflt;
  }
};

namespace detail {

inline Poly parseEquation(const std::string& line, const Universe& U, int b)
{
  auto eq = line.find('=');
  if (eq == std::string::npos) throw ParseError("expected 'v" + std::to_string(b + 1) + " = ...'", 0);
  std::string lhs = line.substr(0, eq);
  lhs.erase(std::remove_if(lhs.begin(), lhs.end(), [](unsigned char c) { return std::isspace(c); }), lhs.end());
  if (lhs != "v" + std::to_string(b + 1)) throw ParseError("left side must be v" + std::to_string(b + 1), 0);
  try {
    return parsePoly(line.substr(eq + 1), U);
  }
  catch (const ParseError& e) {
    throw ParseError(std::string("equation ") + std::to_string(b + 1) + ": " + e.what(), e.column + int(eq) + 1);
  }
}

inline std::vector<int> readWeights(const nlohmann::json& j, int count, const char* what)
{
  std::vector<int> out;
  for (auto& x : j) {
    if (x.is_array()) {
      // grouped form [weight, multiplicity]
      if (x.size() != 2) throw std::invalid_argument(std::string(what) + ": groups are [weight, multiplicity]");
      for (int k = 0; k < x[1].get<int>(); ++k) out.push_back(x[0].get<int>());
    }
    else {
      out.push_back(x.get<int>());
    }
  }
  if (int(out.size()) != count) throw std::invalid_argument(std::string(what) + ": wrong number of weights");
  for (int v : out)
    if (v <= 0) throw std::invalid_argument(std::string(what) + ": weights must be positive");
  return out;
}

} // namespace detail

namespace detail {

inline std::pair<int, int> lineColumn(const std::string& text, size_t offset)
{
  int line = 1, col = 1;
  for (size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    }
    else {
      ++col;
    }
  }
  return {line, col};
}

/// Position of a column of the first quoted occurrence of the string in the document.
inline std::pair<int, int> locateString(const std::string& text, const std::string& value, int column)
{
  std::string quoted = nlohmann::json(value).dump();
  size_t at = text.find(quoted);
  if (at == std::string::npos) return {0, 0};
  return lineColumn(text, at + 1 + size_t(std::max(column, 0)));
}

} // namespace detail

inline SurfaceFile parseSurfaceFile(const std::string& text)
{
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  }
  catch (const nlohmann::json::parse_error& e) {
    auto [l, c] = detail::lineColumn(text, e.byte ? e.byte - 1 : 0);
    throw SurfaceFileError("malformed document", l, c);
  }
  try {
    SurfaceFile f;
    f.U = Universe{j.at("n").get<int>(), j.at("K").get<int>()};
    if (f.U.n < 1 || f.U.K < 1) throw std::invalid_argument("n and K must be positive");
    f.name = j.value("name", "");
    f.zWeights = j.contains("zWeights") ? detail::readWeights(j.at("zWeights"), f.U.n, "zWeights")
                                        : std::vector<int>(f.U.n, 1);
    if (j.contains("wWeights")) f.wWeights = detail::readWeights(j.at("wWeights"), f.U.K, "wWeights");
    auto readList = [&](const char* key) {
      std::vector<Poly> out;
      auto arr = j.at(key);
      if (int(arr.size()) != f.U.K) throw std::invalid_argument(std::string("need K entries in ") + key);
      for (int b = 0; b < f.U.K; ++b) {
        std::string line = arr[b].get<std::string>();
        try {
          out.push_back(detail::parseEquation(line, f.U, b));
        }
        catch (const ParseError& e) {
          auto [l, c] = detail::locateString(text, line, e.column);
          throw SurfaceFileError(e.what(), l, c);
        }
      }
      return out;
    };
    f.equations = readList("equations");
    f.perturbation = j.contains("perturbation") ? readList("perturbation") : std::vector<Poly>(f.U.K, Poly(f.U));
    for (int b = 0; b < f.U.K; ++b)
      if (!f.equations[b].isReal() || !f.perturbation[b].isReal())
        throw std::invalid_argument("equation " + std::to_string(b + 1) + " is not real");
    if (j.contains("settings")) f.settings = j.at("settings");
    return f;
  }
  catch (const nlohmann::json::exception& e) {
    throw SurfaceFileError(e.what(), 0, 0);
  }
}

inline SurfaceFile loadSurfaceFile(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parseSurfaceFile(ss.str());
}

inline std::string printSurfaceFile(const SurfaceFile& f)
{
  nlohmann::ordered_json j;
  if (!f.name.empty()) j["name"] = f.name;
  j["n"] = f.U.n;
  j["K"] = f.U.K;
  j["zWeights"] = f.zWeights;
  if (f.wWeights) j["wWeights"] = *f.wWeights;
  std::vector<std::string> eqs, per;
  bool anyPert = false;
  for (int b = 0; b < f.U.K; ++b) {
    eqs.push_back("v" + std::to_string(b + 1) + " = " + toString(f.equations[b]));
    per.push_back("v" + std::to_string(b + 1) + " = " + toString(f.perturbation[b]));
    anyPert |= !f.perturbation[b].isZero();
  }
  j["equations"] = eqs;
  if (anyPert) j["perturbation"] = per;
  if (!f.settings.empty()) j["settings"] = f.settings;
  return j.dump(2) + "\n";
}

inline SurfaceFile surfaceFileOf(const SurfaceSpec& S, const std::string& name = "")
{
  SurfaceFile f;
  f.U = S.U;
  f.name = name;
  f.zWeights = S.ws.z;
  f.wWeights = S.ws.w;
  f.equations = S.phi;
  f.perturbation = S.pert;
  return f;
}

/// "a1,...,an;w1,...,wK" with each entry a constant expression such as 1/2-i.
inline std::pair<std::vector<Gaussian>, std::vector<Gaussian>> parsePointText(const std::string& text, const Universe& U)
{
  auto semi = text.find(';');
  if (semi == std::string::npos) throw ParseError("point must be 'z1,...,zn;w1,...,wK'", 0);
  auto split = [&](const std::string& s, int expect, size_t offset) {
    std::vector<Gaussian> out;
    size_t start = 0;
    Universe C{U.n, U.K};
    while (start <= s.size()) {
      size_t comma = s.find(',', start);
      std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      Poly p(C);
      try {
        p = parsePoly(item, C);
      }
      catch (const ParseError& e) {
        throw ParseError(std::string("point: ") + e.what(), e.column + int(offset + start));
      }
      if (p.size() > 1 || (p.size() == 1 && !p.terms().begin()->first.isConstant()))
        throw ParseError("point coordinates must be constants", int(offset + start));
      out.push_back(p.isZero() ? Gaussian(0) : p.terms().begin()->second);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (int(out.size()) != expect) throw ParseError("point has wrong number of coordinates", int(offset));
    return out;
  };
  return {split(text.substr(0, semi), U.n, 0), split(text.substr(semi + 1), U.K, semi + 1)};
}

} // namespace crmodel
