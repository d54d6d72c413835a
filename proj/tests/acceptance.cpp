// Acceptance suite: runs every agreed criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit code is the failure count.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "whitney/invariants.hpp"
#include "whitney/io.hpp"

using namespace whitney;

namespace {

const Tolerance kExact = Tolerance::exact_mode();

int failures = 0;

void criterion(int number, const std::string& what, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %2d: %s  %s%s%s\n", number, ok ? "PASS" : "FAIL", what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

Polynomial random_poly(Rng& rng, std::size_t n, std::uint32_t deg) {
    Polynomial f(n);
    for (const auto& alpha : multi_indices_up_to(n, deg))
        if (rng.next_int(0, 2)) f.add_term(alpha, rng.next_rational(5, 3));
    return f;
}

PolyMap random_map(Rng& rng, std::size_t n, std::size_t m, std::uint32_t deg) {
    std::vector<Polynomial> comps;
    for (std::size_t j = 0; j < m; ++j) comps.push_back(random_poly(rng, n, deg));
    return PolyMap(n, std::move(comps));
}

PointCloud random_cloud(Rng& rng, std::size_t n, std::size_t count) {
    std::vector<Point> pts;
    while (pts.size() < count) {
        Point p;
        for (std::size_t i = 0; i < n; ++i) p.push_back(rng.next_rational(3, 2));
        bool dup = false;
        for (const auto& q : pts)
            if (points_equal(q, p, kExact)) dup = true;
        if (!dup) pts.push_back(std::move(p));
    }
    return PointCloud(n, std::move(pts));
}

JetField random_field(Rng& rng, const PointCloud& X, std::uint32_t m) {
    JetField f(X, m);
    for (std::size_t p = 0; p < X.size(); ++p)
        for (std::size_t s = 0; s < f.basis().size(); ++s) f.set_at_slot(p, s, rng.next_rational(5, 3));
    return f;
}

/// Reynolds operator on jet fields over a G-stable cloud: averages the
/// pullbacks along all group elements. The output satisfies the groupoid
/// condition by the cocycle identity; used to manufacture invariant test
/// fields that are not jets of polynomials.
JetField jet_reynolds(const FiniteGroup& G, const JetField& R, const Tolerance& tol) {
    JetField sum(R.cloud(), R.order());
    for (std::size_t gi = 0; gi < G.size(); ++gi) {
        JetField pulled = group_pullback(G.element(gi), R);
        // pulled lives on g^{-1} . cloud; realign its points with R's cloud
        JetField aligned(R.cloud(), R.order());
        for (std::size_t p = 0; p < pulled.cloud().size(); ++p) {
            auto idx = R.cloud().find(pulled.cloud().point(p), tol);
            if (!idx) throw domain_error("reynolds needs a stable cloud");
            for (std::size_t s = 0; s < R.basis().size(); ++s)
                aligned.set_at_slot(*idx, s, pulled.value_at_slot(p, s));
        }
        sum = jet_add(sum, aligned);
    }
    return jet_scale(sum, make_rational(1, Integer(G.size())));
}

std::string run_cli(const std::string& args) {
    std::string cmd = std::string(WHITNEY_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "<popen failed>";
    while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    pclose(pipe);
    return out;
}

FiniteGroup make_z2() {
    OrthogonalElement flip;
    flip.dim = 1;
    flip.mat = {Rational(-1)};
    flip.label = "-1";
    return group_closure({flip}, kExact, 4);
}

FiniteGroup make_z4() {
    OrthogonalElement r90;
    r90.dim = 2;
    r90.mat = {Rational(0), Rational(-1), Rational(1), Rational(0)};
    r90.label = "r90";
    return group_closure({r90}, kExact, 8);
}

FiniteGroup make_s3() {
    OrthogonalElement s12 = OrthogonalElement::identity(3);
    s12.at(0, 0) = 0;
    s12.at(1, 1) = 0;
    s12.at(0, 1) = 1;
    s12.at(1, 0) = 1;
    s12.label = "s12";
    OrthogonalElement s23 = OrthogonalElement::identity(3);
    s23.at(1, 1) = 0;
    s23.at(2, 2) = 0;
    s23.at(1, 2) = 1;
    s23.at(2, 1) = 1;
    s23.label = "s23";
    return group_closure({s12, s23}, kExact, 8);
}

} // namespace

int main() {
    criterion(1, "composition cross-validation on 100 seeded instances, exact", [](std::string&) {
        Rng rng(20260808);
        for (int t = 0; t < 100; ++t) {
            std::size_t n = static_cast<std::size_t>(rng.next_int(1, 3));
            std::size_t p = static_cast<std::size_t>(rng.next_int(1, 3));
            std::uint32_t deg = static_cast<std::uint32_t>(rng.next_int(1, 3));
            std::uint32_t m = static_cast<std::uint32_t>(rng.next_int(0, 4));
            PointCloud X = random_cloud(rng, n, static_cast<std::size_t>(rng.next_int(1, 2)));
            PolyMap phi = random_map(rng, n, p, deg);
            Polynomial f = random_poly(rng, p, deg);
            PointCloud Y = image_cloud(phi, X, kExact);
            PullbackPlan plan = make_plan(phi, X, Y, kExact);
            JetField F = jet_of_poly(f, Y, m);
            JetField multi = pullback_multi(plan, F, m);
            if (!compare_fields(multi, pullback_comb(plan, F, m), kExact).equal) return false;
            if (!compare_fields(multi, jet_of_poly(f.compose(phi), X, m), kExact).equal) return false;
        }
        return true;
    });

    criterion(2, "hand-anchored composite: second derivative 30 with term split 24 + 6",
              [](std::string& detail) {
                  PolyMap phi(1, {Polynomial::monomial(MultiIndex({2}), 1)});
                  PointCloud X(1, {{Rational(1)}});
                  PointCloud Y(1, {{Rational(1)}});
                  PullbackPlan plan = make_plan(phi, X, Y, kExact);
                  JetField F = jet_of_poly(Polynomial::monomial(MultiIndex({3}), 1), Y, 3);
                  JetField pulled = pullback_multi(plan, F, 2);
                  if (pulled.value(0, MultiIndex({2})) != 30) {
                      detail = "value != 30";
                      return false;
                  }
                  auto terms = pullback_multi_terms(plan, F, MultiIndex({2}), 0);
                  if (terms.size() != 2) return false;
                  Rational lo = terms[0].contribution, hi = terms[1].contribution;
                  if (lo > hi) std::swap(lo, hi);
                  return lo == 6 && hi == 24;
              });

    criterion(3, "partition counts 1,2,5,15,52,203 and unit-variable solution counts", [](std::string&) {
        const long bell[] = {1, 2, 5, 15, 52, 203};
        for (int l = 1; l <= 6; ++l)
            if (set_partitions(l).size() != static_cast<std::size_t>(bell[l - 1])) return false;
        // independent oracle: integer partitions by the standard recursion
        std::function<long(int, int)> parts = [&](int k, int largest) -> long {
            if (k == 0) return 1;
            if (k < 0 || largest == 0) return 0;
            return parts(k - largest, largest) + parts(k, largest - 1);
        };
        for (std::uint32_t b = 1; b <= 8; ++b)
            if (lambda_solutions(1, 1, MultiIndex({b})).size() !=
                static_cast<std::size_t>(parts(static_cast<int>(b), static_cast<int>(b))))
                return false;
        return true;
    });

    criterion(4, "jet algebra laws (homomorphism, associativity, derivation), 100 instances each",
              [](std::string&) {
                  Rng rng(424242);
                  for (int t = 0; t < 100; ++t) {
                      std::size_t n = static_cast<std::size_t>(rng.next_int(1, 3));
                      std::uint32_t m = static_cast<std::uint32_t>(rng.next_int(0, 4));
                      PointCloud X = random_cloud(rng, n, 2);
                      Polynomial f = random_poly(rng, n, 4), g = random_poly(rng, n, 4);
                      if (!compare_fields(jet_of_poly(f * g, X, m),
                                          jet_mul(jet_of_poly(f, X, m), jet_of_poly(g, X, m)), kExact)
                               .equal)
                          return false;
                  }
                  for (int t = 0; t < 100; ++t) {
                      std::size_t n = static_cast<std::size_t>(rng.next_int(1, 2));
                      std::uint32_t m = static_cast<std::uint32_t>(rng.next_int(0, 3));
                      PointCloud X = random_cloud(rng, n, 2);
                      JetField a = random_field(rng, X, m), b = random_field(rng, X, m),
                               c = random_field(rng, X, m);
                      if (!compare_fields(jet_mul(jet_mul(a, b), c), jet_mul(a, jet_mul(b, c)), kExact)
                               .equal)
                          return false;
                  }
                  for (int t = 0; t < 100; ++t) {
                      std::size_t n = static_cast<std::size_t>(rng.next_int(1, 2));
                      std::uint32_t m = static_cast<std::uint32_t>(rng.next_int(1, 3));
                      PointCloud X = random_cloud(rng, n, 2);
                      JetField e = random_field(rng, X, m), f = random_field(rng, X, m);
                      std::vector<Polynomial> comps;
                      for (std::size_t i = 0; i < n; ++i) comps.push_back(random_poly(rng, n, 2));
                      PolyMap xi(n, std::move(comps));
                      JetField lhs = vf_apply(xi, jet_mul(e, f));
                      JetField rhs = jet_add(jet_mul(vf_apply(xi, e), jet_truncate(f, m - 1)),
                                             jet_mul(jet_truncate(e, m - 1), vf_apply(xi, f)));
                      if (!compare_fields(lhs, rhs, kExact).equal) return false;
                  }
                  return true;
              });

    criterion(5, "Whitney seminorm fixture equals 4 and low-degree remainders vanish",
              [](std::string& detail) {
                  JetField f = jet_of_poly(Polynomial::monomial(MultiIndex({2}), 1),
                                           PointCloud(1, {{Rational(0)}, {Rational(1)}}), 1);
                  std::vector<std::size_t> K{0, 1};
                  WhitneyReport rep = whitney_seminorm(f, K, 1);
                  if (rep.sup != 2.0 || rep.quotient_sup != 2.0 || rep.total != 4.0) {
                      detail = "got total " + format_double17(rep.total);
                      return false;
                  }
                  Rng rng(5150);
                  for (int t = 0; t < 25; ++t) {
                      std::size_t n = static_cast<std::size_t>(rng.next_int(1, 2));
                      std::uint32_t k = static_cast<std::uint32_t>(rng.next_int(0, 3));
                      PointCloud X = random_cloud(rng, n, 3);
                      JetField jf = jet_of_poly(random_poly(rng, n, k), X, k);
                      for (std::size_t a = 0; a < X.size(); ++a) {
                          JetField r = remainder_field(jf, a, k);
                          for (std::size_t p = 0; p < X.size(); ++p)
                              for (std::size_t s = 0; s < r.basis().size(); ++s)
                                  if (r.value_at_slot(p, s) != 0) return false;
                      }
                  }
                  return true;
              });

    criterion(6, "catalog pullbacks and averages stay invariant; circle quadrature hits 1/2",
              [](std::string& detail) {
                  Rng rng(606060);
                  for (const auto& e : catalog()) {
                      for (int t = 0; t < 50; ++t) {
                          Point z0;
                          for (std::size_t i = 0; i < e.dim; ++i) z0.push_back(rng.next_rational(3, 2));
                          std::size_t gi = static_cast<std::size_t>(
                              rng.next_int(0, static_cast<long>(e.finite.size() - 1)));
                          Point z1 = e.finite.element(gi).apply(z0);
                          std::vector<Point> pts{z0};
                          if (!points_equal(z0, z1, kExact)) pts.push_back(z1);
                          PointCloud Z(e.dim, pts);
                          PointCloud T = image_cloud(e.hilbert_map(), Z, kExact);
                          std::uint32_t m = e.dim > 4 ? 2 : 3;
                          JetField H = random_field(rng, T, m);
                          // hilbert_pullback certifies inv1 + inv2 internally and
                          // throws internal-inconsistency on any failure
                          JetField pulled = hilbert_pullback(e, H, Z, m, kExact);
                          (void)pulled;
                      }
                  }
                  // averaging: idempotent, and averaged output passes the checks
                  FiniteGroup z4 = make_z4();
                  for (int t = 0; t < 10; ++t) {
                      Polynomial f = random_poly(rng, 2, 3);
                      Polynomial avg = average_poly(z4, f);
                      if (!(average_poly(z4, avg) == avg)) return false;
                      PointCloud Z = random_cloud(rng, 2, 2);
                      OrbitCloud orbit = orbit_cloud(z4, Z, kExact);
                      auto arrows = groupoid_arrows(z4, orbit.cloud, kExact);
                      if (!check_inv1(arrows, jet_of_poly(avg, orbit.cloud, 3), kExact).ok) return false;
                  }
                  CircleAction circle{2, {{0, 1, 1}}};
                  for (int t = 0; t < 10; ++t) {
                      Polynomial f = random_poly(rng, 2, 4);
                      Polynomial avg = average_poly(circle, f, f.degree() + 1);
                      Polynomial again = average_poly(circle, avg, f.degree() + 1);
                      Polynomial drift = again - avg;
                      for (const auto& [alpha, c] : drift.terms())
                          if (std::fabs(to_double(c)) > 1e-9) return false;
                      PointCloud Z(2, {{Rational(0), Rational(1)}, {Rational(2), Rational(1)}});
                      auto inv2 = check_inv2({circle.generator_matrix()}, jet_of_poly(avg, Z, 3),
                                             Tolerance::float_mode());
                      if (!inv2.ok) return false;
                  }
                  Polynomial x2 = Polynomial::monomial(MultiIndex({2, 0}), 1);
                  double half = to_double(average_poly(circle, x2, 5).coeff(MultiIndex({2, 0})));
                  if (std::fabs(half - 0.5) > 1e-9) {
                      detail = "quadrature mean " + format_double17(half);
                      return false;
                  }
                  return true;
              });

    criterion(7, "extension round trips exactly for Z/2, Z/4, S3 and rejects corrupted input",
              [](std::string& detail) {
                  Rng rng(707070);
                  std::vector<FiniteGroup> groups{make_z2(), make_z4(), make_s3()};
                  for (const auto& G : groups) {
                      std::size_t n = G.dim();
                      for (std::size_t zsize = 1; zsize <= 6; ++zsize)
                          for (std::uint32_t m = 0; m <= 3; ++m) {
                              PointCloud Z = random_cloud(rng, n, zsize);
                              // direction 1: invariant polynomial data on Z
                              Polynomial inv = average_poly(G, random_poly(rng, n, 3));
                              JetField F = jet_of_poly(inv, Z, m);
                              JetField ext = extend_invariant(G, F, kExact);
                              if (!compare_fields(restrict_field(ext, Z, kExact), F, kExact).equal)
                                  return false;
                              // direction 2: a random invariant field on the stable
                              // orbit cloud, restricted then re-extended
                              OrbitCloud orbit = orbit_cloud(G, Z, kExact);
                              JetField hat =
                                  jet_reynolds(G, random_field(rng, orbit.cloud, m), kExact);
                              JetField back =
                                  extend_invariant(G, restrict_field(hat, Z, kExact), kExact);
                              if (!(back.cloud() == orbit.cloud)) {
                                  detail = "extension cloud differs from the orbit cloud";
                                  return false;
                              }
                              if (!compare_fields(back, hat, kExact).equal) return false;
                          }
                  }
                  // fault injection: perturb one coefficient on a cloud with a
                  // nontrivial arrow; both the precondition check and the
                  // candidate comparison must reject it
                  FiniteGroup z2 = make_z2();
                  PointCloud Z(1, {{Rational(1)}, {Rational(-1)}});
                  JetField bad = jet_of_poly(Polynomial::monomial(MultiIndex({2}), 1), Z, 2);
                  bad.set(0, MultiIndex({1}), bad.value(0, MultiIndex({1})) + 1);
                  bool rejected = false, conflict = false;
                  try {
                      extend_invariant(z2, bad, kExact);
                  } catch (const Error& e) {
                      rejected = e.kind() == "non-invariant";
                  }
                  try {
                      detail::extend_invariant_unchecked(z2, bad, kExact, Exec::serial);
                  } catch (const Error& e) {
                      conflict = e.kind() == "conflicting-extension";
                  }
                  if (!rejected) detail = "precondition check did not fire";
                  if (!conflict) detail += " candidate-conflict check did not fire";
                  return rejected && conflict;
              });

    criterion(8, "worked examples: cotangent strata and the single circle arrow", [](std::string& detail) {
        std::string cot = run_cli("demo cotangent --n 2");
        bool ok = cot.find("(q,p) = (0,0) -> stratum V_(G)") != std::string::npos &&
                  cot.find("parallel) -> stratum V_(O_{n-1})") != std::string::npos &&
                  cot.find("generic) -> stratum V_(e)") != std::string::npos;
        std::string circ = run_cli("demo circle");
        ok = ok && circ.find("arrows: 1") != std::string::npos &&
             circ.find("inv2 J^2(x1^2 + x2^2): pass") != std::string::npos &&
             circ.find("inv2 J^2(x2): fail at alpha=(1,0) value 1") != std::string::npos;
        if (!ok) detail = "unexpected demo output";
        return ok;
    });

    criterion(9, "generic Jacobian ranks 1, 1, n, 3 across the catalog families", [](std::string& detail) {
        for (const auto& e : catalog()) {
            int expected = 0;
            if (e.family == "z2" || e.family == "circle")
                expected = 1;
            else if (e.family == "sn")
                expected = static_cast<int>(e.dim);
            else
                expected = 3;
            int got = generic_rank(e.hilbert_map(), 3, 987654321);
            if (got != expected) {
                detail = e.name + " rank " + std::to_string(got);
                return false;
            }
        }
        return true;
    });

    criterion(10, "identical seed and mode give byte-identical output on consecutive runs",
              [](std::string& detail) {
                  for (const std::string& cmd :
                       {std::string("demo circle"), std::string("demo cotangent --n 3"),
                        std::string("hilbert list"), std::string("--mode float --seed 9 demo circle")}) {
                      if (run_cli(cmd) != run_cli(cmd)) {
                          detail = "output differs for: " + cmd;
                          return false;
                      }
                  }
                  return true;
              });

    if (failures == 0) std::printf("all criteria pass\n");
    return failures;
}
