#include "msect/exact_core.hpp"
#include "msect/number_theory.hpp"
#include "msect/plot.hpp"
#include "msect/sectioning.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace msect;

namespace {

using Chain = std::vector<IntVector>;

// Collects the first few failure messages for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) detail_ += (detail_.empty() ? "" : "; ") + what;
  }
  bool ok() const { return failures_ == 0; }
  std::string detail() const {
    if (failures_ <= 3) return detail_;
    return detail_ + "; +" + std::to_string(failures_ - 3) + " more";
  }

 private:
  int failures_ = 0;
  std::string detail_;
};

std::string show(const Chain& c) {
  std::string s;
  for (const auto& v : c) s += (s.empty() ? "" : " ") + v.str();
  return s;
}

std::string show(const std::vector<Rational>& q) {
  std::string s;
  for (const auto& r : q) s += (s.empty() ? "" : ", ") + r.get_str();
  return "[" + s + "]";
}

Check trisection_plane() {
  Check c;
  const IntVector a{1, 1}, b{-2, 11};
  const auto f = sect_polynomial(3, gram_invariants(a, b));
  c.expect(f.str() == "t^3 - 27t^2 - 507t + 1521", "polynomial " + f.str());
  const auto roots = rational_roots(f, gram_invariants(a, b));
  c.expect(roots.complete && roots.roots == std::vector<Integer>{39}, "root set is not {39}");
  c.expect(first_sector_vector(a, b, 39) == IntVector{1, 2}, "first trisector");
  const auto d = decide_msect(a, b, 3);
  c.expect(d.status == Status::Sectable, "status " + std::string(to_string(d.status)));
  const Chain want{{1, 1}, {1, 2}, {1, 7}, {-2, 11}};
  c.expect(d.sequences.size() == 1 && d.sequences[0].vectors == want,
           d.sequences.empty() ? "no sequence" : "chain " + show(d.sequences[0].vectors));
  return c;
}

Check trisection_space() {
  Check c;
  const IntVector a{1, 1, 1}, b{-11, 6, 23};
  const auto g = gram_invariants(a, b);
  const auto f = sect_polynomial(3, g);
  c.expect(f.str() == "t^3 - 54t^2 - 5202t + 31212", "polynomial " + f.str());
  const auto roots = rational_roots(f, g);
  c.expect(roots.complete && roots.roots == std::vector<Integer>{102}, "root set is not {102}");
  c.expect(first_sector_vector(a, b, 102) == IntVector{1, 2, 3}, "first trisector");
  const auto d = decide_msect(a, b, 3);
  c.expect(d.status == Status::Sectable && !d.sequences.empty() &&
               d.sequences[0].vectors.at(1) == IntVector{1, 2, 3},
           "msect did not produce (1,2,3)");
  return c;
}

Check nonasector() {
  Check c;
  EquisectorSequence start;
  start.vectors = {{7, 1}, {2, 1}};
  start.m = 1;
  const auto full = extend_sequence(start, 8);
  const Chain want{{7, 1},   {2, 1},    {1, 1},    {1, 2},     {1, 7},
                   {-2, 11}, {-17, 31}, {-41, 38}, {-161, 73}, {-278, 29}};
  c.expect(full.vectors == want, "chain " + show(full.vectors));
  const auto rep = verify_sequence(want, IntVector{-278, 29});
  c.expect(rep.valid, "verify rejected: " + rep.reason);
  return c;
}

Check quadrisection() {
  Check c;
  const auto seq = generate_sequence({1, 1, 1}, {1, 2, 3}, 4);
  c.expect(seq.vectors.back() == IntVector{-59, 1, 61}, "endpoint " + seq.vectors.back().str());
  const auto plane = pow2_sectable({1, 1}, {-17, 31}, 2);
  c.expect(plane.holds && plane.cosines == std::vector<Rational>{Rational(7, 25), Rational(4, 5)},
           "planar chain " + show(plane.cosines));
  const auto space = pow2_sectable({1, 1, 1}, {-59, 1, 61}, 2);
  c.expect(space.holds && space.cosines == std::vector<Rational>{Rational(1, 49), Rational(5, 7)},
           "spatial chain " + show(space.cosines));
  return c;
}

Check bisector_criterion() {
  Check c;
  oracle::Generator gen(1001);
  int positives = 0;
  for (int i = 0; i < 200; ++i) {
    auto [a, b] = gen.pair(gen.uniform(2, 4), 50, false);
    const auto g = gram_invariants(a, b);
    const auto r = bisector_vector(a, b);
    const bool rational_cos = rational_sqrt(g.na * g.nb).has_value();
    const auto d = decide_msect(a, b, 2);
    const bool ok_bis = r.status == Status::Sectable;
    const bool ok_msect = d.status == Status::Sectable;
    c.expect(ok_bis == rational_cos && rational_cos == ok_msect,
             "disagreement at " + a.str() + " " + b.str());
    c.expect(r.status != Status::Indeterminate && d.status != Status::Indeterminate,
             "indeterminate at " + a.str() + " " + b.str());
    if (r.vector) {
      ++positives;
      c.expect(angles_equal(a, *r.vector, *r.vector, b), "unequal halves at " + a.str() + " " + b.str());
    }
  }
  // The random sample above is mostly negative; mirrored pairs add positives.
  for (int i = 0; i < 50; ++i) {
    const std::size_t dim = static_cast<std::size_t>(gen.uniform(2, 4));
    const IntVector a = gen.vector(dim, 50), m = gen.vector(dim, 50);
    if (dependent(a, m)) continue;
    const IntVector b = primitive(reflect_raw(a, m));
    if (dependent(a, b)) continue;
    const auto r = bisector_vector(a, b);
    const auto d = decide_msect(a, b, 2);
    c.expect(r.status == Status::Sectable && d.status == Status::Sectable,
             "mirrored pair not bisectable at " + a.str() + " " + b.str());
    if (r.vector) {
      ++positives;
      c.expect(angles_equal(a, *r.vector, *r.vector, b), "unequal halves at " + a.str() + " " + b.str());
    }
  }
  c.expect(positives > 0, "no positive cases");
  return c;
}

Check reflection_identity() {
  Check c;
  oracle::Generator gen(1002);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t dim = static_cast<std::size_t>(gen.uniform(2, 4));
    const IntVector prev = gen.vector(dim, 50), cur = gen.vector(dim, 50);
    const IntVector w = reflect_raw(prev, cur);
    const Integer nc = norm2(cur);
    c.expect(norm2(w) == nc * nc * norm2(prev),
             "norm identity at " + prev.str() + " " + cur.str());
    if (!w.is_zero()) c.expect(angles_equal(prev, cur, cur, w), "angle identity at " + prev.str() + " " + cur.str());
  }
  return c;
}

Check polynomial_properties() {
  Check c;
  oracle::Generator gen(1003);
  for (int i = 0; i < 100; ++i) {
    auto [a, b] = gen.pair(gen.uniform(2, 4), 30, true);
    const auto g = gram_invariants(a, b);
    for (unsigned m = 2; m <= 6; ++m) {
      const auto f = sect_polynomial(m, g);
      const auto q = oracle::to_qpoly(f.coeffs);
      c.expect(oracle::poly_gcd(q, oracle::derivative(q)).size() == 1, "not squarefree at " + a.str());
      c.expect(oracle::sturm_real_root_count(q) == static_cast<int>(m), "real root count at " + a.str());
      c.expect(f(Integer(0)) != 0, "zero root at " + a.str());
    }
  }
  return c;
}

Check scaling() {
  Check c;
  oracle::Generator gen(1004);
  const long factors[] = {2, 3, 5};
  for (int i = 0; i < 100; ++i) {
    auto [a, b] = gen.pair(gen.uniform(2, 3), 12, true);
    const unsigned m = static_cast<unsigned>(gen.uniform(2, 4));
    const auto base = decide_msect(a, b, m);
    const Integer k = factors[gen.uniform(0, 2)], l = factors[gen.uniform(0, 2)];
    const auto scaled = decide_msect(k * a, l * b, m);
    c.expect(base.status == scaled.status, "status changed at " + a.str() + " " + b.str());
    bool same = base.sequences.size() == scaled.sequences.size();
    for (std::size_t j = 0; same && j < base.sequences.size(); ++j)
      same = base.sequences[j].vectors == scaled.sequences[j].vectors;
    c.expect(same, "sequences changed at " + a.str() + " " + b.str());
  }
  return c;
}

Check budget_soundness() {
  Check c;
  const IntVector a{1, 1}, b{-2, 11};
  MsectOptions tiny;
  tiny.budget.work = 2;
  const auto starved = decide_msect(a, b, 3, tiny);
  c.expect(starved.status == Status::Indeterminate, "tiny budget gave " + std::string(to_string(starved.status)));
  c.expect(decide_msect(a, b, 3).status == Status::Sectable, "default budget not sectable");

  struct Example {
    IntVector a, b;
    unsigned m;
  };
  const std::vector<Example> examples = {{{1, 1}, {-2, 11}, 3},
                                         {{1, 1, 1}, {-11, 6, 23}, 3},
                                         {{1, 1}, {-17, 31}, 4},
                                         {{1, 1, 1}, {-59, 1, 61}, 4},
                                         {{7, 1}, {-278, 29}, 9}};
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& e : examples) {
    const auto d = decide_msect(e.a, e.b, e.m);
    c.expect(d.status == Status::Sectable, "example " + e.a.str() + " " + e.b.str() + " not sectable");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(secs < 1.0, "examples took " + std::to_string(secs) + " s");
  return c;
}

Check svg_determinism() {
  Check c;
  PlotSpec spec;
  spec.sequence = {{7, 1},   {2, 1},    {1, 1},    {1, 2},     {1, 7},
                   {-2, 11}, {-17, 31}, {-41, 38}, {-161, 73}, {-278, 29}};
  const std::string first = render_svg(spec), second = render_svg(spec);
  c.expect(first == second, "renders differ");
  std::size_t lines = 0;
  for (auto pos = first.find("<line "); pos != std::string::npos; pos = first.find("<line ", pos + 1)) ++lines;
  c.expect(lines == 10, std::to_string(lines) + " line elements");
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria = {
      {"trisection of (1,1),(-2,11)", trisection_plane},
      {"trisection of (1,1,1),(-11,6,23)", trisection_space},
      {"nonasector chain from (7,1),(2,1)", nonasector},
      {"quadrisection chains and cosine chains", quadrisection},
      {"bisector criterion on random pairs", bisector_criterion},
      {"reflection identity", reflection_identity},
      {"sectability polynomial roots", polynomial_properties},
      {"scaling invariance", scaling},
      {"indeterminate soundness and runtime", budget_soundness},
      {"svg determinism", svg_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check result;
    try {
      result = criteria[i].run();
    } catch (const std::exception& e) {
      result.expect(false, std::string("exception: ") + e.what());
    }
    if (result.ok()) {
      std::printf("PASS criterion %zu: %s\n", i + 1, criteria[i].name);
    } else {
      ++failed;
      std::printf("FAIL criterion %zu: %s (%s)\n", i + 1, criteria[i].name, result.detail().c_str());
    }
  }
  return failed == 0 ? 0 : 1;
}
