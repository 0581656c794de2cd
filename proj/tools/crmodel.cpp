#include <crmodel/corpus.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

using namespace crmodel;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { Ok = 0, InputError = 1, RefusalExit = 2, CorpusMismatch = 3, Internal = 4 };

struct Options {
  std::string file;
  bool json = false;
  std::optional<int> bound;
  std::optional<int> stopWindow;
  std::optional<unsigned> seed;
  std::optional<int> capWeight;
  std::string point;
  std::vector<int> mu;
  std::string strategy;
  bool fields = false;
  int samples = 8;
};

struct Context {
  Options opt;
  SurfaceFile file;

  int bound(int dflt) const { return opt.bound ? *opt.bound : file.setting("bound", dflt); }
  int stopWindow() const { return opt.stopWindow ? *opt.stopWindow : file.setting("stopWindow", 0); }
  unsigned seed() const { return opt.seed ? *opt.seed : file.setting("seed", 1u); }
  int capWeight(int dflt) const { return opt.capWeight ? *opt.capWeight : file.setting("capWeight", dflt); }
  bool hasBound() const { return opt.bound || file.settings.contains("bound"); }
};

Json typeJson(const TypeDescriptor& t)
{
  Json j;
  j["type"] = t.str();
  Json pairs = Json::array();
  for (auto& [m, k] : t.pairs) pairs.push_back({m, k});
  j["pairs"] = pairs;
  j["finite"] = !t.infinite;
  if (t.infinite) j["defect"] = t.defect;
  return j;
}

Json polys(const std::vector<Poly>& ps)
{
  Json a = Json::array();
  for (auto& p : ps) a.push_back(toString(p));
  return a;
}

Json fieldJson(const HoloField& X)
{
  Json j;
  j["f"] = polys(X.f);
  j["g"] = polys(X.g);
  return j;
}

Json pointJson(const SurfacePoint& p)
{
  Json z = Json::array(), u = Json::array();
  for (auto& a : p.z) z.push_back(a.str());
  for (auto& b : p.u) u.push_back(b.get_str());
  return {{"z", z}, {"u", u}};
}

std::string vec(const std::vector<int>& v)
{
  std::string s = "(";
  for (size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + ")";
}

void emit(const Context& c, const Json& j, const std::string& text)
{
  if (c.opt.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

ReductionResult analyticType(const Context& c)
{
  return computeAnalyticType(c.file.rhs(), c.file.zWeights, c.bound(0));
}

/// Reduced model of the file's germ; refuses germs of infinite type.
SurfaceSpec reducedModel(const Context& c)
{
  auto r = analyticType(c);
  if (!r.finite) throw Refusal("germ is not of finite type " + r.type.str() + "; no model surface");
  return r.surface.model();
}

GradedAlgebra autOf(const Context& c, const SurfaceSpec& Q)
{
  AutOptions o;
  if (c.hasBound()) o.bound = c.bound(0);
  o.stopWindow = c.stopWindow();
  return computeAutAlgebra(Q, o);
}

Germ germOf(const Context& c)
{
  if (c.file.U.K != 1) throw std::invalid_argument("this command handles hypersurfaces (K = 1) only");
  return Germ(c.file.rhs()[0]);
}

int cmdType(const Context& c)
{
  auto r = analyticType(c);
  Json j = typeJson(r.type);
  j["weights"] = c.file.zWeights;
  j["bound"] = r.bound;
  std::string text = "type " + r.type.str() + "\n";
  if (r.finite) {
    auto g = geometricType(r.surface.model());
    j["geometricType"] = g.str();
    text += "geometric type of the model " + g.str() + "\n";
  }
  emit(c, j, text);
  return Ok;
}

int cmdReduce(const Context& c)
{
  auto r = analyticType(c);
  Json j = typeJson(r.type);
  j["equations"] = polys(r.equations);
  j["order"] = r.order;
  j["steps"] = int(r.steps.size());
  std::string text = "type " + r.type.str() + "\n";
  if (r.finite) {
    auto rep = checkConditions(r.surface.model());
    j["clean"] = rep.clean();
    j["surface"] = nlohmann::json::parse(printSurfaceFile(surfaceFileOf(r.surface, c.file.name)));
    text += printSurfaceFile(surfaceFileOf(r.surface, c.file.name));
  }
  else {
    for (size_t b = 0; b < r.equations.size(); ++b)
      text += "v" + std::to_string(b + 1) + " = " + toString(r.equations[b]) + "\n";
  }
  emit(c, j, text);
  return Ok;
}

int cmdAut(const Context& c)
{
  auto Q = reducedModel(c);
  auto A = autOf(c, Q);
  Json j;
  j["type"] = Q.type().str();
  j["range"] = {A.lo, A.hi};
  j["dims"] = A.dims(A.lo, A.hi);
  j["total"] = A.total();
  j["stopRule"] = A.stopRule;
  j["complete"] = A.complete;
  std::string text = "type " + Q.type().str() + "\n";
  for (int nu = A.lo; nu <= A.hi; ++nu) text += "g" + std::to_string(nu) + "  " + std::to_string(A.dim(nu)) + "\n";
  text += "total " + std::to_string(A.total()) + "\nstop rule: " + A.stopRule + "\n";
  if (c.opt.fields) {
    Json comps;
    for (auto& [nu, basis] : A.components) {
      Json a = Json::array();
      for (auto& X : basis) {
        a.push_back(fieldJson(X));
        text += "g" + std::to_string(nu) + ": " + X.str() + "\n";
      }
      comps[std::to_string(nu)] = a;
    }
    j["fields"] = comps;
  }
  emit(c, j, text);
  return Ok;
}

int cmdDecompose(const Context& c)
{
  auto Q = reducedModel(c);
  auto A = autOf(c, Q);
  auto S = decompose(A);
  int gplus = int(S.gplus.size());
  Json j;
  j["dimGs"] = S.dimGs();
  j["dimSt"] = S.dimSt();
  j["dimG0"] = int(S.g0.size());
  j["dimGplus"] = gplus;
  j["homogeneous"] = S.dimGs() == Q.n() * 2 + Q.K();
  j["stopRule"] = A.stopRule;
  std::string text = "dim gs " + std::to_string(S.dimGs()) + "\ndim st- " + std::to_string(S.dimSt()) + "\ndim g0 " +
                     std::to_string(S.g0.size()) + "\ndim g+ " + std::to_string(gplus) + "\nstop rule: " +
                     A.stopRule + "\n";
  emit(c, j, text);
  return Ok;
}

int cmdNondegen(const Context& c)
{
  auto r = analyticType(c);
  std::vector<int> m;
  for (int b = 0; b < c.file.U.K; ++b) m.push_back(r.finite ? r.surface.ws.w[b] : r.bound);
  std::sort(m.begin(), m.end());
  SurfaceSpec S(c.file.U, WeightSystem(c.file.zWeights, m), c.file.rhs());
  int order = c.capWeight(0);
  auto res = finiteNondegeneracyTest(S, order, c.seed());
  Json j;
  std::string verdict = res.nondegenerate ? "nondegenerate" : res.exceeded ? "undecided" : "degenerate";
  j["nondegenerate"] = res.nondegenerate;
  j["verdict"] = verdict;
  j["order"] = res.order;
  j["rank"] = res.rank;
  j["orderCapReached"] = res.exceeded;
  std::string text = verdict + (res.exceeded ? " (order cap " : " (order ") +
                     std::to_string(res.order) + ", rank " + std::to_string(res.rank) + ")\n";
  emit(c, j, text);
  return Ok;
}

int cmdShift(const Context& c)
{
  if (c.opt.point.empty()) throw std::invalid_argument("shift needs --point 'z1,...,zn;w1,...,wK'");
  auto Q = c.file.spec();
  if (!Q.isModel() || !checkConditions(Q).clean())
    throw std::invalid_argument("shift needs a reduced model surface; run reduce first");
  auto [z, w] = parsePointText(c.opt.point, Q.U);
  auto xi = pointOnSurface(Q, z, w);
  auto r = buildShift(Q, xi);
  Json j;
  j["point"] = pointJson(xi);
  j["typeAtPoint"] = r.typeAt.str();
  std::string text;
  if (r.shift) {
    j["shift"] = {{"z", polys(r.shift->z)}, {"w", polys(r.shift->w)}};
    j["replay"] = shiftReplayHolds(Q, *r.shift);
    text = r.shift->str() + "replay " + (shiftReplayHolds(Q, *r.shift) ? "holds" : "fails") + "\n";
  }
  else {
    j["shift"] = nullptr;
    j["failedDeficit"] = r.failedDeficit;
    text = "no shift: type at the point " + r.typeAt.str() + " differs from " + Q.type().str() + "\n";
  }
  emit(c, j, text);
  return Ok;
}

int cmdHomog(const Context& c)
{
  auto Q = reducedModel(c);
  std::string strat = c.opt.strategy.empty() ? "both" : c.opt.strategy;
  Json j;
  std::string text;
  std::optional<HomogeneityReport> alg, smp;
  if (strat == "algebraic" || strat == "both") {
    alg = isHomogeneousAlgebraic(Q);
    j["algebraic"] = {{"verdict", alg->verdictString()}, {"dimGs", alg->dimGs}, {"required", 2 * Q.n() + Q.K()}};
    text += "algebraic: " + alg->verdictString() + " (dim gs " + std::to_string(alg->dimGs) + " of " +
            std::to_string(2 * Q.n() + Q.K()) + ")\n";
  }
  if (strat == "sampling" || strat == "both") {
    smp = isHomogeneousSampling(Q, c.opt.samples, c.seed());
    Json s = {{"verdict", smp->verdictString()}, {"points", int(smp->sampled.size())}, {"seed", c.seed()}};
    if (smp->witness) s["witness"] = {{"point", pointJson(*smp->witness)}, {"type", smp->witnessType.str()}};
    j["sampling"] = s;
    text += "sampling: " + smp->verdictString() + " over " + std::to_string(smp->sampled.size()) + " points";
    if (smp->witness) text += "; witness " + smp->witness->str() + " of type " + smp->witnessType.str();
    text += "\n";
  }
  if (!alg && !smp) throw std::invalid_argument("strategy must be algebraic, sampling or both");
  if (alg && smp) {
    bool agree = (alg->verdict == HomogeneityReport::Verdict::Homogeneous) ==
                 (smp->verdict == HomogeneityReport::Verdict::SampledTrue);
    j["agree"] = agree;
    text += std::string("strategies ") + (agree ? "agree" : "disagree") + "\n";
  }
  emit(c, j, text);
  return Ok;
}

int cmdDescend(const Context& c)
{
  auto g = germOf(c);
  auto strategy = c.opt.strategy == "tightest" ? DescendStrategy::Tightest : DescendStrategy::Simplest;
  auto mu0 = c.opt.mu.empty() ? c.file.zWeights : c.opt.mu;
  auto chain = descend(g, mu0, strategy, c.capWeight(4));
  Json links = Json::array();
  std::string text = "strategy " + chain.strategy + ", weight cap " + std::to_string(chain.cap) + "\n";
  for (auto& l : chain.links) {
    Json x;
    x["mu"] = l.mu;
    x["model"] = toString(l.model.phi[0]);
    x["type"] = l.type.str();
    x["monomials"] = l.monomials;
    x["dimAut"] = l.dimAut ? Json(*l.dimAut) : Json(nullptr);
    links.push_back(x);
    text += vec(l.mu) + "  v = " + toString(l.model.phi[0]) + "  dim aut " +
            (l.dimAut ? std::to_string(*l.dimAut) : std::string("?")) + "\n";
  }
  Json j;
  j["strategy"] = chain.strategy;
  j["cap"] = chain.cap;
  j["links"] = links;
  j["length"] = int(chain.links.size());
  emit(c, j, text);
  return Ok;
}

int cmdAscend(const Context& c)
{
  auto g = germOf(c);
  auto r = ascend(g.F);
  Json j;
  j["exhausted"] = r.exhausted;
  j["facesTried"] = int(r.tried.size());
  std::string text;
  if (r.exhausted) {
    text = "exhausted after " + std::to_string(r.tried.size()) + " faces\n";
  }
  else {
    j["mu"] = r.mu;
    j["model"] = toString(r.model->phi[0]);
    text = "proper face with weight " + vec(r.mu) + ": v = " + toString(r.model->phi[0]) + "\n";
  }
  emit(c, j, text);
  return Ok;
}

int cmdMinimal(const Context& c)
{
  auto Q = reducedModel(c);
  if (Q.K() != 1) throw std::invalid_argument("minimal models are computed for hypersurfaces");
  auto M = minimalModel(Q);
  bool one = isOneMinimal(M);
  Json j;
  j["model"] = toString(M.phi[0]);
  j["oneMinimal"] = one;
  emit(c, j, "v = " + toString(M.phi[0]) + "\n" + (one ? "1-minimal\n" : "not 1-minimal\n"));
  return Ok;
}

int cmdProperSearch(const Context& c)
{
  auto g = germOf(c);
  int cap = c.capWeight(3);
  auto found = searchProperWeights(g, cap);
  Json a = Json::array();
  std::string text = "weight cap " + std::to_string(cap) + "\n";
  for (auto& p : found) {
    a.push_back({{"mu", p.mu}, {"type", p.type.str()}, {"dimAut", p.dimAut ? Json(*p.dimAut) : Json(nullptr)}});
    text += vec(p.mu) + "  " + p.type.str() + "  dim aut " + (p.dimAut ? std::to_string(*p.dimAut) : "?") + "\n";
  }
  if (found.empty()) text += "no proper weight up to the cap\n";
  Json j;
  j["cap"] = cap;
  j["proper"] = a;
  emit(c, j, text);
  return Ok;
}

int cmdCriticalWeight(const Context& c)
{
  auto mu = c.opt.mu.empty() ? c.file.zWeights : c.opt.mu;
  if (mu.empty()) throw std::invalid_argument("critical-weight needs --mu or a surface file");
  int bound = c.bound(2 * *std::max_element(mu.begin(), mu.end()) + 1);
  auto r = criticalWeight(mu, bound);
  Json tested = Json::array();
  std::string text = "critical weight " + std::to_string(r.value) + " for mu = " + vec(mu) + "\n";
  for (auto& [s, nd] : r.tested) {
    tested.push_back({{"topWeight", s}, {"nondegenerate", nd}});
    text += "  top weight " + std::to_string(s) + ": " + (nd ? "nondegenerate" : "degenerate") + "\n";
  }
  Json j;
  j["mu"] = mu;
  j["criticalWeight"] = r.value;
  j["cap"] = r.cap;
  j["tested"] = tested;
  emit(c, j, text);
  return Ok;
}

int cmdCorpus(const Context& c)
{
  Json entries = Json::array();
  std::string text;
  int failures = 0;
  for (auto& e : builtinCorpus()) {
    Json x;
    x["name"] = e.name;
    x["basis"] = e.basis;
    bool ok = true;
    auto r = reduce(e.surface);
    x["type"] = r.type.str();
    ok &= r.type.str() == e.type;
    auto Q = r.surface.model();
    AutOptions o;
    if (e.autBound) o.bound = e.autBound;
    auto A = computeAutAlgebra(Q, o);
    auto S = decompose(A);
    x["autTotal"] = A.total();
    x["dimGs"] = S.dimGs();
    if (e.autTotal) ok &= A.total() == *e.autTotal;
    if (!e.autDims.empty()) ok &= A.dims(A.lo, A.lo + int(e.autDims.size()) - 1) == e.autDims;
    if (e.dimGs) ok &= S.dimGs() == *e.dimGs;
    if (e.homogeneous) ok &= (S.dimGs() == 2 * Q.n() + Q.K()) == *e.homogeneous;
    x["pass"] = ok;
    failures += !ok;
    entries.push_back(x);
    text += (ok ? "PASS " : "FAIL ") + e.name + "  type " + r.type.str() + "  dim aut " + std::to_string(A.total()) +
            "  dim gs " + std::to_string(S.dimGs()) + "  [" + e.basis + "]\n";
  }
  Json j;
  j["entries"] = entries;
  j["failures"] = failures;
  emit(c, j, text);
  return failures ? CorpusMismatch : Ok;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Weighted types, normal forms and automorphism algebras of polynomial CR model surfaces"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "JSON report on stdout");
  app.add_option("--bound", opt.bound, "weight bound (type reduction, aut components, critical weight)");
  app.add_option("--stop-window", opt.stopWindow, "consecutive zero components that stop the aut search");
  app.add_option("--seed", opt.seed, "seed for generic and sampled points");
  app.add_option("--cap-weight", opt.capWeight, "cap on candidate weights, or on the nondegeneracy order");

  using Handler = int (*)(const Context&);
  struct Command {
    const char* name;
    const char* help;
    Handler run;
    bool needsFile;
  };
  const Command commands[] = {
      {"type", "analytic and geometric type", cmdType, true},
      {"reduce", "reduced form (conditions I and II)", cmdReduce, true},
      {"aut", "graded automorphism algebra of the model surface", cmdAut, true},
      {"decompose", "gs + st- + g0 + g+ splitting", cmdDecompose, true},
      {"nondegen", "holomorphic nondegeneracy via finite nondegeneracy", cmdNondegen, true},
      {"shift", "shift of a model surface onto a point", cmdShift, true},
      {"homog", "holomorphic homogeneity certificate", cmdHomog, true},
      {"descend", "descending chain of weights (hypersurfaces)", cmdDescend, true},
      {"ascend", "ascending search over Newton faces (hypersurfaces)", cmdAscend, true},
      {"minimal", "1-minimal model by removing monomial pairs", cmdMinimal, true},
      {"proper-search", "all proper weights up to the cap", cmdProperSearch, true},
      {"critical-weight", "critical weight of a weight vector", cmdCriticalWeight, false},
      {"corpus", "built-in suite with expected values", cmdCorpus, false},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (auto& cmd : commands) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->fallthrough();
    auto* f = sub->add_option("file", opt.file, "surface file");
    if (cmd.needsFile) f->required();
    if (std::string(cmd.name) == "shift") sub->add_option("--point", opt.point, "point 'z1,...,zn;w1,...,wK'");
    if (std::string(cmd.name) == "aut") sub->add_flag("--fields", opt.fields, "list basis fields");
    if (std::string(cmd.name) == "homog") {
      sub->add_option("--strategy", opt.strategy, "algebraic, sampling or both");
      sub->add_option("--samples", opt.samples, "random sample points besides the fixed ones");
    }
    if (std::string(cmd.name) == "descend") {
      sub->add_option("--mu", opt.mu, "starting weights")->delimiter(',');
      sub->add_option("--strategy", opt.strategy, "simplest or tightest");
    }
    if (std::string(cmd.name) == "critical-weight") sub->add_option("--mu", opt.mu, "weights")->delimiter(',');
    subs.push_back({sub, &cmd});
  }
  try {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? Ok : InputError;
  }
  try {
    for (auto& [sub, cmd] : subs) {
      if (!sub->parsed()) continue;
      Context c{opt, {}};
      if (!opt.file.empty()) c.file = loadSurfaceFile(opt.file);
      return cmd->run(c);
    }
  }
  catch (const Refusal& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return RefusalExit;
  }
  catch (const NotProper& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return RefusalExit;
  }
  catch (const std::logic_error& e) {
    // invalid_argument and out_of_range are input errors; other logic errors are internal
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::out_of_range*>(&e)) {
      std::cerr << "error: " << e.what() << "\n";
      return InputError;
    }
    std::cerr << "internal error: " << e.what() << "\n";
    return Internal;
  }
  catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return InputError;
  }
  return InputError;
}
