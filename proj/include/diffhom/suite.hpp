#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "diffhom/catalog.hpp"
#include "diffhom/harmonic.hpp"
#include "diffhom/jet_action.hpp"
#include "diffhom/random.hpp"
#include "diffhom/tensor.hpp"

namespace diffhom {

struct SuiteConfig {
  std::vector<int> N{1, 2};
  std::vector<int> d{1, 2, 3, 4, 5};
  std::vector<int> k{0, 1, 2, 3};
  Limits limits;
  int membership_cap = 0;  // 0 means d(k+1) for each (d, k)
  std::string format = "text";
  std::uint64_t seed = 20240611;
  int property_instances = 200;
  bool include_timing = false;

  void validate() const {
    auto nonempty = [](const std::vector<int>& v, const char* name) {
      if (v.empty()) throw ConfigError(std::string("range '") + name + "' is empty");
    };
    nonempty(N, "N");
    nonempty(d, "d");
    nonempty(k, "k");
    for (int x : N)
      if (x < 1) throw ConfigError("N values must be >= 1");
    for (int x : d)
      if (x < 1) throw ConfigError("d values must be >= 1");
    for (int x : k)
      if (x < 0) throw ConfigError("k values must be >= 0");
    if (limits.max_box == 0 || limits.max_monomials == 0 || limits.max_enumeration == 0)
      throw ConfigError("resource caps must be positive");
    if (membership_cap < 0) throw ConfigError("membership cap must be positive (or 0 for automatic)");
    if (format != "text" && format != "json" && format != "csv")
      throw ConfigError("format must be text, json or csv");
    if (property_instances < 1) throw ConfigError("propertyInstances must be >= 1");
  }

  nlohmann::json to_json() const {
    return {{"N", N},
            {"d", d},
            {"k", k},
            {"caps",
             {{"maxBox", limits.max_box},
              {"maxMonomials", limits.max_monomials},
              {"maxEnumeration", limits.max_enumeration},
              {"membershipCap", membership_cap}}},
            {"format", format},
            {"seed", seed},
            {"propertyInstances", property_instances}};
  }

  static SuiteConfig from_json(const nlohmann::json& j) {
    SuiteConfig c;
    try {
      if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
      static const std::set<std::string> known{"N", "d", "k", "caps", "format", "seed", "propertyInstances",
                                               "includeTiming"};
      for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw ConfigError("unknown configuration key '" + key + "'");
      if (j.contains("N")) c.N = j.at("N").get<std::vector<int>>();
      if (j.contains("d")) c.d = j.at("d").get<std::vector<int>>();
      if (j.contains("k")) c.k = j.at("k").get<std::vector<int>>();
      if (j.contains("caps")) {
        const auto& caps = j.at("caps");
        if (caps.contains("maxBox")) c.limits.max_box = caps.at("maxBox").get<std::size_t>();
        if (caps.contains("maxMonomials")) c.limits.max_monomials = caps.at("maxMonomials").get<std::size_t>();
        if (caps.contains("maxEnumeration"))
          c.limits.max_enumeration = caps.at("maxEnumeration").get<std::size_t>();
        if (caps.contains("membershipCap")) c.membership_cap = caps.at("membershipCap").get<int>();
      }
      if (j.contains("format")) c.format = j.at("format").get<std::string>();
      if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
      if (j.contains("propertyInstances")) c.property_instances = j.at("propertyInstances").get<int>();
      if (j.contains("includeTiming")) c.include_timing = j.at("includeTiming").get<bool>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("bad configuration: ") + e.what());
    }
    c.validate();
    return c;
  }
};

// DIFFHOM_MAX_BOX, DIFFHOM_MAX_MONOMIALS and DIFFHOM_MEMBERSHIP_CAP override
// the corresponding caps.
inline void apply_environment(SuiteConfig& cfg,
                              const std::function<const char*(const char*)>& getenv_fn = [](const char* n) {
                                return std::getenv(n);
                              }) {
  auto read = [&](const char* name) -> std::optional<unsigned long long> {
    const char* v = getenv_fn(name);
    if (!v || !*v) return std::nullopt;
    std::size_t used = 0;
    unsigned long long x = 0;
    try {
      x = std::stoull(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != std::string(v).size() || x == 0)
      throw ConfigError(std::string(name) + " must be a positive integer, got '" + v + "'");
    return x;
  };
  if (auto x = read("DIFFHOM_MAX_BOX")) cfg.limits.max_box = *x;
  if (auto x = read("DIFFHOM_MAX_MONOMIALS")) cfg.limits.max_monomials = *x;
  if (auto x = read("DIFFHOM_MEMBERSHIP_CAP")) cfg.membership_cap = static_cast<int>(*x);
}

enum class CheckStatus { Pass, Fail, Skipped };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

struct CheckRecord {
  std::string check_id;
  std::string result;   // name of the mathematical statement being checked
  std::string inputs;
  std::string expected;
  std::string computed;
  CheckStatus status = CheckStatus::Fail;
  std::string source;   // closed-form | independent-computation | definition
  double elapsed_ms = 0;
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<CheckRecord> records;

  std::size_t count(CheckStatus s) const {
    std::size_t n = 0;
    for (const auto& r : records) n += r.status == s ? 1 : 0;
    return n;
  }

  // 0 when nothing failed (skips allowed), 1 otherwise.
  int exit_code() const { return count(CheckStatus::Fail) ? 1 : 0; }
};

namespace detail {

template <class T>
std::string str(const T& v) {
  if constexpr (std::is_convertible_v<T, std::string>) {
    return v;
  } else if constexpr (std::is_arithmetic_v<T>) {
    return std::to_string(v);
  } else {
    return to_string(v);
  }
}

inline std::string join(const std::vector<int>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

// Number of standard tableaux by the hook length formula (French shape,
// hooks are the same as for the transposed English shape).
inline Integer hook_length_count(const Partition& mu) {
  const auto rows = mu.nonzero_parts();  // ascending
  Integer prod = 1;
  const int width = rows.empty() ? 0 : rows.back();
  std::vector<int> col_len(static_cast<std::size_t>(width), 0);
  for (int c = 0; c < width; ++c)
    for (int r : rows) col_len[static_cast<std::size_t>(c)] += r > c ? 1 : 0;
  // row index i counted from the longest row
  std::vector<int> desc(rows.rbegin(), rows.rend());
  for (std::size_t i = 0; i < desc.size(); ++i)
    for (int c = 0; c < desc[i]; ++c) {
      const int arm = desc[i] - c - 1;
      const int leg = col_len[static_cast<std::size_t>(c)] - static_cast<int>(i) - 1;
      prod *= arm + leg + 1;
    }
  return factorial(static_cast<unsigned long>(mu.size())) / prod;
}

}  // namespace detail

class SuiteRunner {
 public:
  explicit SuiteRunner(SuiteConfig cfg) : cfg_(std::move(cfg)), sampler_(cfg_.seed) { cfg_.validate(); }

  SuiteReport run() {
    report_ = SuiteReport{cfg_, {}};
    run_poly();
    run_jet();
    run_tensor();
    run_harmonic();
    run_catalog();
    return report_;
  }

 private:
  struct Outcome {
    std::string expected;
    std::string computed;
    bool ok = false;
  };

  template <class A, class B>
  static Outcome same(const A& expected, const B& computed) {
    Outcome o{detail::str(expected), detail::str(computed), false};
    o.ok = o.expected == o.computed;
    return o;
  }

  static Outcome holds(bool ok, const std::string& what, const std::string& detail_on_fail = "") {
    return Outcome{what, ok ? what : "violated" + (detail_on_fail.empty() ? "" : ": " + detail_on_fail), ok};
  }

  void check(const std::string& id, const std::string& result, const std::string& inputs,
             const std::string& source, const std::function<Outcome()>& fn) {
    CheckRecord rec{id, result, inputs, "", "", CheckStatus::Fail, source, 0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Outcome o = fn();
      rec.expected = o.expected;
      rec.computed = o.computed;
      rec.status = o.ok ? CheckStatus::Pass : CheckStatus::Fail;
    } catch (const ResourceLimit& e) {
      rec.computed = std::string("resource limit: ") + e.what();
      rec.status = CheckStatus::Skipped;
    } catch (const std::exception& e) {
      rec.computed = std::string("error: ") + e.what();
      rec.status = CheckStatus::Fail;
    }
    rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    report_.records.push_back(std::move(rec));
  }

  // Runs `trial` the configured number of times; counts successes.
  Outcome property(const std::function<bool(Sampler&, int)>& trial) {
    int passed = 0;
    const int n = cfg_.property_instances;
    for (int i = 0; i < n; ++i) passed += trial(sampler_, i) ? 1 : 0;
    return same(std::to_string(n) + "/" + std::to_string(n), std::to_string(passed) + "/" + std::to_string(n));
  }

  int max_of(const std::vector<int>& v) const { return *std::max_element(v.begin(), v.end()); }

  const InvariantBasis& jet_basis(int N, int k, int d, KernelRoute route = KernelRoute::SeriesAction) {
    const auto key = std::make_tuple(N, k, d, static_cast<int>(route));
    auto it = jet_cache_.find(key);
    if (it != jet_cache_.end()) return it->second;
    return jet_cache_.emplace(key, diff_homog_basis(JetContext{N, k, d}, cfg_.limits, route)).first->second;
  }

  static std::string nkd(int N, int k, int d) {
    return "N=" + std::to_string(N) + ",k=" + std::to_string(k) + ",d=" + std::to_string(d);
  }
  static std::string kd(int k, int d) { return "k=" + std::to_string(k) + ",d=" + std::to_string(d); }

  // -------------------------------------------------------------------------
  void run_poly() {
    const std::vector<VarId> vars{VarId::X(0, 0), VarId::X(0, 1), VarId::X(1, 0), VarId::X(1, 1), VarId::Zv(1)};
    check("poly.ring-laws", "commutative ring axioms", "random polynomials", "definition", [&] {
      return property([&](Sampler& s, int) {
        const Poly p = s.poly(vars, 4, 3), q = s.poly(vars, 4, 3), r = s.poly(vars, 3, 2);
        return (p + q) * r == p * r + q * r && (p * q) * r == p * (q * r) && p * q == q * p &&
               (p - p).is_zero() && p * Poly::constant(1) == p;
      });
    });
    check("poly.substitution-homomorphism", "substitution is a ring map", "random polynomials", "definition", [&] {
      return property([&](Sampler& s, int) {
        const Poly p = s.poly(vars, 3, 2), q = s.poly(vars, 3, 2);
        std::map<VarId, Poly> img;
        for (VarId v : vars) img.emplace(v, s.poly(vars, 2, 2));
        return substitute(p * q, img) == substitute(p, img) * substitute(q, img) &&
               substitute(p + q, img) == substitute(p, img) + substitute(q, img);
      });
    });
    check("poly.determinant-alternation", "determinant is alternating", "random 3x3 and 4x4 matrices",
          "definition", [&] {
            return property([&](Sampler& s, int i) {
              const std::size_t n = 3 + static_cast<std::size_t>(i % 2);
              PolyMatrix m(n, std::vector<Poly>(n));
              for (auto& row : m)
                for (auto& e : row) e = s.poly(vars, 2, 1);
              const std::size_t a = static_cast<std::size_t>(s.uniform(0, static_cast<int>(n) - 1));
              const std::size_t b = (a + 1 + static_cast<std::size_t>(s.uniform(0, static_cast<int>(n) - 2))) % n;
              PolyMatrix swapped = m, repeated = m;
              for (std::size_t r = 0; r < n; ++r) {
                std::swap(swapped[r][a], swapped[r][b]);
                repeated[r][b] = repeated[r][a];
              }
              const Poly det = determinant(m);
              return determinant(swapped) == -det && determinant(repeated).is_zero();
            });
          });
  }

  // -------------------------------------------------------------------------
  void run_jet() {
    check("jet.leibniz-image", "Leibniz rule for (alpha X)^(j)", "i=0,j=2", "definition", [&] {
      const Poly expected = lambda_var(0) * Poly::var(VarId::X(0, 2)) +
                            Poly::constant(2) * lambda_var(1) * Poly::var(VarId::X(0, 1)) +
                            Poly::constant(2) * lambda_var(2) * Poly::var(VarId::X(0, 0));
      return same(expected, leibniz_image(0, 2, JetContext{1, 2, 1}));
    });
    const Poly wronskian = Poly::var(VarId::X(0, 0)) * Poly::var(VarId::X(1, 1)) -
                           Poly::var(VarId::X(1, 0)) * Poly::var(VarId::X(0, 1));
    check("jet.wronskian-quasi-invariance", "Wronskian is differentially homogeneous", "W(X0,X1)", "definition",
          [&] {
            const JetContext ctx{1, 1, 2};
            return same(pow(lambda_var(0), 2) * wronskian, act_series(wronskian, ctx));
          });
    check("jet.non-invariant", "X0*X1' is not differentially homogeneous", "X0*X1'", "definition", [&] {
      const Poly p = Poly::var(VarId::X(0, 0)) * Poly::var(VarId::X(1, 1));
      return same(std::string("false"), is_diff_homogeneous(p, 2) ? "true" : "false");
    });

    for (int N : cfg_.N)
      for (int d : cfg_.d) {
        std::vector<std::size_t> dims;
        for (int k : cfg_.k) {
          const std::string in = nkd(N, k, d);
          if (k >= d - 1) {
            check("jet.dimension[" + in + "]", "Schmidt-Kolchin dimension (N+1)^d", in, "closed-form", [&] {
              dims.push_back(jet_basis(N, k, d).dimension());
              return same(ipow(Integer(N + 1), static_cast<unsigned long>(d)), Integer(dims.back()));
            });
          } else {
            check("jet.dimension[" + in + "]", "invariant dimension below stabilization", in,
                  "independent-computation", [&] {
                    dims.push_back(jet_basis(N, k, d).dimension());
                    return same(jet_basis(N, k, d, KernelRoute::Infinitesimal).dimension(), dims.back());
                  });
          }
          check("jet.basis-invariant[" + in + "]", "basis elements are differentially homogeneous", in,
                "definition", [&] {
                  const auto& b = jet_basis(N, k, d);
                  std::size_t bad = 0;
                  for (const auto& p : b.elements) bad += is_diff_homogeneous(p, d, JetContext{N, k, d}) ? 0 : 1;
                  return same(std::string("0 failures"), std::to_string(bad) + " failures");
                });
          if (k >= 1 && std::find(cfg_.k.begin(), cfg_.k.end(), k - 1) != cfg_.k.end())
            check("jet.filtration[" + in + "]", "order filtration is increasing", in, "definition", [&] {
              PolySpan span;
              for (const auto& p : jet_basis(N, k, d).elements) span.insert(p);
              bool ok = true;
              for (const auto& p : jet_basis(N, k - 1, d).elements) ok = ok && span.contains(p);
              return holds(ok, "order k-1 basis inside order k span");
            });
        }
        if (dims.size() == cfg_.k.size() && dims.size() > 1) {
          check("jet.monotone[N=" + std::to_string(N) + ",d=" + std::to_string(d) + "]",
                "dimension non-decreasing in k and constant from k=d-1", "k in {" + detail::join(cfg_.k) + "}",
                "definition", [&] {
                  bool ok = true;
                  for (std::size_t i = 0; i < cfg_.k.size(); ++i)
                    for (std::size_t j = 0; j < cfg_.k.size(); ++j) {
                      if (cfg_.k[i] < cfg_.k[j] && dims[i] > dims[j]) ok = false;
                      if (cfg_.k[i] >= d - 1 && cfg_.k[j] >= d - 1 && dims[i] != dims[j]) ok = false;
                    }
                  return holds(ok, "monotone and stable");
                });
        }
      }

    for (int N : cfg_.N) {
      const int d = 2;
      check("jet.stabilization[N=" + std::to_string(N) + ",d=2]", "stabilization at k=d-1", nkd(N, d, d),
            "independent-computation",
            [&] { return same(jet_basis(N, d - 1, d).dimension(), jet_basis(N, d, d).dimension()); });
    }

    const int kmax = std::min(max_of(cfg_.k), 3);
    const JetContext ctx{2, kmax, 0};
    const auto jet_vars = ctx.variables();
    check("jet.group-law", "acting by beta then alpha equals acting by alpha*beta", "random series and polynomials",
          "definition", [&] {
            return property([&](Sampler& s, int) {
              const Poly p = s.poly(jet_vars, 3, 2);
              const auto a = s.series(kmax + 1), b = s.series(kmax + 1);
              const auto ab = series_product(a, b, static_cast<std::size_t>(kmax + 1));
              return act_numeric(act_numeric(p, b, ctx), a, ctx) == act_numeric(p, ab, ctx);
            });
          });
    check("jet.linearity", "the action is linear", "random polynomials", "definition", [&] {
      return property([&](Sampler& s, int) {
        const Poly p = s.poly(jet_vars, 3, 2), q = s.poly(jet_vars, 3, 2);
        const Rational a = s.rational(), b = s.rational();
        return act_series(a * p + b * q, ctx) == a * act_series(p, ctx) + b * act_series(q, ctx);
      });
    });
    check("jet.identity", "the unit series acts trivially", "random polynomials", "definition", [&] {
      return property([&](Sampler& s, int) {
        const Poly p = s.poly(jet_vars, 4, 3);
        std::vector<Rational> one(static_cast<std::size_t>(kmax + 1), Rational(0));
        one[0] = 1;
        return act_numeric(p, one, ctx) == p;
      });
    });
    check("jet.product-lemma", "pq invariant implies p and q invariant", "products of invariants and non-invariants",
          "definition", [&] {
            const auto& inv = jet_basis(1, 1, 2).elements;
            const std::vector<VarId> v{VarId::X(0, 0), VarId::X(0, 1), VarId::X(1, 0), VarId::X(1, 1)};
            const JetContext c{1, 1, 0};
            return property([&](Sampler& s, int i) {
              Poly p = inv[static_cast<std::size_t>(s.uniform(0, static_cast<int>(inv.size()) - 1))];
              Poly q = (i % 2) ? s.homogeneous_poly(v, 2, 1 + s.uniform(0, 1))
                               : inv[static_cast<std::size_t>(s.uniform(0, static_cast<int>(inv.size()) - 1))];
              if (q.is_zero()) q = Poly::var(VarId::X(0, 1));
              const auto rep = product_lemma_check(p, q, c);
              return rep.consistent() && rep.p_homogeneous == true;
            });
          });
  }

  // -------------------------------------------------------------------------
  void run_tensor() {
    check("tensor.apply-J", "ordered-sum J^(l) on pure tensors", "f1(x)f1, l=2", "definition", [&] {
      return same(std::string("2*f(0,0)"), to_string(apply_J_ell(Tensor::basis(1, {1, 1}), 2)));
    });
    for (int d : cfg_.d) {
      const std::string in = kd(d - 1, d);
      check("tensor.invariant-dimension[" + in + "]", "invariant tensors of F_{d-1}^d have dimension d!", in,
            "closed-form", [&] {
              return same(factorial(static_cast<unsigned long>(d)),
                          Integer(invariant_tensor_basis(d - 1, d, cfg_.limits).size()));
            });
      check("tensor.wronskian-basis[d=" + std::to_string(d) + "]", "Wronskians W_alpha form a basis",
            "d=" + std::to_string(d), "closed-form", [&] {
              const auto rep = verify_wronskian_basis(d, cfg_.limits);
              return same(std::string("rank ") + factorial(static_cast<unsigned long>(d)).get_str() + ", invariant",
                          "rank " + std::to_string(rep.rank) + (rep.pass() ? ", invariant" : ", not invariant"));
            });
    }
    for (int k : cfg_.k)
      for (int d : cfg_.d) {
        const std::string in = kd(k, d);
        check("tensor.harmonic-bridge[" + in + "]", "g maps invariant tensors onto the I_k-harmonic space", in,
              "independent-computation", [&] {
                const auto basis = invariant_tensor_basis(k, d, cfg_.limits);
                const auto perp = perp_basis(ik_ideal(d, k), k, cfg_.limits);
                PolySpan perp_span;
                for (const auto& p : perp) perp_span.insert(p);
                PolySpan images;
                bool inside = true;
                for (const auto& t : basis) {
                  const Poly g = to_harmonic(t);
                  inside = inside && perp_span.contains(g);
                  images.insert(g);
                }
                return same("rank " + std::to_string(perp.size()) + ", inside",
                            "rank " + std::to_string(images.rank()) + (inside ? ", inside" : ", outside"));
              });
      }

    check("tensor.one-parameter", "(I+aJ)^d t = t + sum a^l/l! J^(l) t", "random tensors, d<=4", "definition", [&] {
      return property([&](Sampler& s, int) {
        const int d = s.uniform(1, 4), k = s.uniform(0, 3);
        const Tensor t = s.tensor(k, d, 4);
        const Rational a = s.rational();
        Tensor rhs = t;
        Rational ap = 1;
        for (int l = 1; l <= d; ++l) {
          ap *= a;
          rhs += (ap / Rational(factorial(static_cast<unsigned long>(l)))) * apply_J_ell(t, l);
        }
        return apply_one_parameter(t, a) == rhs;
      });
    });
    check("tensor.intertwining", "g(J^(l) t) = D_l g(t), D_l the ordered mixed partials", "random tensors",
          "definition", [&] {
            return property([&](Sampler& s, int) {
              const int d = s.uniform(2, 3), k = s.uniform(1, 2);
              const Tensor t = s.tensor(k, d, 3);
              const int l = s.uniform(1, d);
              std::vector<int> all(static_cast<std::size_t>(d));
              std::iota(all.begin(), all.end(), 1);
              const Poly op = Rational(factorial(static_cast<unsigned long>(l))) * elementary_symmetric(all, l);
              return to_harmonic(apply_J_ell(t, l)) == apply_differential_operator(op, to_harmonic(t));
            });
          });
    check("tensor.kernel-characterization", "span of the kernel basis is the common kernel", "random combinations",
          "definition", [&] {
            return property([&](Sampler& s, int) {
              const int d = s.uniform(1, 3), k = s.uniform(0, 2);
              const auto basis = invariant_tensor_basis(k, d, cfg_.limits);
              Tensor t(k, d);
              for (const auto& b : basis) t += s.rational() * b;
              bool killed = true;
              for (int l = 1; l <= d; ++l) killed = killed && apply_J_ell(t, l).is_zero();
              return killed;
            });
          });
    check("tensor.conjugation", "kernel dimension does not depend on the choice of J", "random S, d<=3",
          "independent-computation", [&] {
            Sampler& s = sampler_;
            bool ok = true;
            for (int i = 0; i < 6; ++i) {
              const int k = s.uniform(1, 2), d = s.uniform(1, 3);
              const auto S = s.invertible_matrix(k + 1);
              const auto J = NilpotentModel{k}.matrix();
              const auto conj = Sampler::multiply(Sampler::multiply(S, J), inverse(S));
              ok = ok && invariant_dimension_for(conj, d, cfg_.limits) == invariant_tensor_basis(k, d).size();
            }
            return holds(ok, "dimensions agree");
          });
    check("tensor.project-symmetric", "symmetrizing W_(0,0) gives the Wronskian", "assignment 1->0, 2->1",
          "definition", [&] {
            const Tensor w = multilinear_to_tensor(wronskian_W({0, 0}, 2, 1), 1, 2);
            const Poly expected = Poly::var(VarId::X(0, 0)) * Poly::var(VarId::X(1, 1)) -
                                  Poly::var(VarId::X(1, 0)) * Poly::var(VarId::X(0, 1));
            return same(expected, project_to_symmetric(w, {0, 1}));
          });
    check("tensor.projection-invariant", "projections of invariant tensors are differentially homogeneous",
          "k<=2, d<=3, all assignments", "definition", [&] {
            bool ok = true;
            for (int d = 1; d <= 3; ++d)
              for (int k = 0; k <= 2; ++k)
                for (const auto& t : invariant_tensor_basis(k, d))
                  for (const auto& f : box_tuples(2, d))
                    ok = ok && is_diff_homogeneous(project_to_symmetric(t, f), d, JetContext{1, k, d});
            return holds(ok, "all projections invariant");
          });
  }

  // -------------------------------------------------------------------------
  void run_harmonic() {
    check("harmonic.mu-k", "euclidean-division partition", "d=5,k=1", "definition",
          [&] { return same(std::string("(2,3)"), to_string(mu_k(5, 1))); });
    check("harmonic.ideal-membership", "Z_2^2 lies in the DeConcini-Procesi ideal of (1,1)", "cap 3", "definition",
          [&] {
            const Poly z = Poly::term(Monomial(VarId::Zv(2), 2), 1);
            return same(std::string("true"), ideal_membership(z, dcp_generators(mu_k(2, 1)), 3) ? "true" : "false");
          });
    check("harmonic.e-recurrence", "e_j(S+x) = e_j(S) + x e_{j-1}(S)", "random subsets", "definition", [&] {
      return property([&](Sampler& s, int) {
        std::vector<int> S;
        const int x = s.uniform(1, 6);
        for (int i = 1; i <= 6; ++i)
          if (i != x && s.coin()) S.push_back(i);
        std::vector<int> S2 = S;
        S2.insert(std::upper_bound(S2.begin(), S2.end(), x), x);
        const int j = s.uniform(1, static_cast<int>(S2.size()));
        return elementary_symmetric(S2, j) == elementary_symmetric(S, j) + z_var(x) * elementary_symmetric(S, j - 1);
      });
    });

    std::set<std::vector<int>> shapes;
    for (int d : cfg_.d)
      for (int k : cfg_.k) {
        const std::string in = "d=" + std::to_string(d) + ",k=" + std::to_string(k);
        std::size_t perp_dim = 0;
        check("harmonic.perp-dimension[" + in + "]", "dim I_k-perp = d!/((q!)^(k+1-r)((q+1)!)^r)", in,
              "closed-form", [&] {
                perp_dim = perp_basis(ik_ideal(d, k), k, cfg_.limits).size();
                return same(harmonic_dimension_formula(d, k), Integer(perp_dim));
              });
        check("harmonic.oberst[" + in + "]", "dim I_k-perp = dim C[Z]/I_k", in, "independent-computation", [&] {
          if (perp_dim == 0) perp_dim = perp_basis(ik_ideal(d, k), k, cfg_.limits).size();
          return same(perp_dim, quotient_dimension(d, k, cfg_.limits));
        });
        const int cap = cfg_.membership_cap ? cfg_.membership_cap : d * (k + 1);
        check("harmonic.dcp-equality[" + in + "]", "I_k equals the DeConcini-Procesi ideal of mu_k",
              in + ",cap=" + std::to_string(cap), "independent-computation", [&] {
                const auto rep = verify_dcp_equality(d, k, cap, cfg_.limits);
                return same(std::string("0 uncertified"),
                            std::to_string(rep.ik_not_in_dcp.size() + rep.dcp_not_in_ik.size()) + " uncertified");
              });
        check("harmonic.delta-harmonic[" + in + "]", "Delta(T) is I_k-harmonic for T standard of shape mu_k", in,
              "definition", [&] {
                const auto ideal = ik_ideal(d, k);
                bool ok = true;
                for (const auto& t : enum_standard_tableaux(mu_k(d, k), cfg_.limits)) {
                  const Poly delta = delta_T(t);
                  for (const auto& g : ideal.generators)
                    ok = ok && apply_differential_operator(g, delta).is_zero();
                }
                return holds(ok, "all annihilated");
              });
        if (d >= k + 1)
          check("harmonic.block-surjectivity[" + in + "]", "block products of Wronskians span the invariants", in,
                "independent-computation", [&] {
                  const auto rep = verify_block_surjectivity(d, k, cfg_.limits);
                  return same("rank " + std::to_string(rep.quotient) + " = invariant dimension",
                              "rank " + std::to_string(rep.rank) +
                                  (rep.pass() ? " = invariant dimension"
                                              : ", invariant dimension " + std::to_string(rep.invariant_dimension) +
                                                    (rep.all_invariant ? "" : ", non-invariant products")));
                });
        shapes.insert(mu_k(d, k).parts());
      }
    for (const auto& parts : shapes) {
      const Partition mu(parts);
      const std::string in = "mu=" + to_string(mu);
      check("harmonic.tableaux[" + in + "]", "number of standard tableaux", in, "independent-computation", [&] {
        return same(detail::hook_length_count(mu), Integer(enum_standard_tableaux(mu, cfg_.limits).size()));
      });
      check("harmonic.spanning[" + in + "]", "derivatives of Delta(T) span the mu-harmonic space", in,
            "independent-computation", [&] {
              const auto rep = verify_spanning(mu, cfg_.limits);
              return same("rank " + rep.multinomial.get_str() + ", harmonic",
                          "rank " + std::to_string(rep.rank) + (rep.all_harmonic ? ", harmonic" : ", not harmonic") +
                              (rep.dimension == rep.rank ? "" : " (perp dimension " + std::to_string(rep.dimension) + ")"));
            });
    }
  }

  // -------------------------------------------------------------------------
  void run_catalog() {
    for (int d : cfg_.d) {
      if (d < 2) continue;
      const std::string in = "d=" + std::to_string(d);
      check("catalog.sigma-count[" + in + "]", "|Sigma_d| = d!/2", in, "closed-form",
            [&] { return same(sigma_count_formula(d), Integer(enum_sigma_d(d, cfg_.limits).size())); });
      check("catalog.sigma-classes[" + in + "]", "|Sigma_d^k| = (k-1)(d-2)!, witness = class", in, "closed-form", [&] {
        const auto all = enum_sigma_d(d, cfg_.limits);
        std::vector<Integer> counts(static_cast<std::size_t>(d + 1), 0);
        bool consistent = true;
        for (const auto& t : all) {
          ++counts[static_cast<std::size_t>(t.cls)];
          consistent = consistent && t.cls == t.witness;
        }
        std::string expected, computed;
        for (int c = 1; c <= d; ++c) {
          expected += (c > 1 ? "," : "") + sigma_class_formula(d, c).get_str();
          computed += (c > 1 ? "," : "") + counts[static_cast<std::size_t>(c)].get_str();
        }
        if (!consistent) computed += " (witness/class mismatch)";
        return same(expected, computed);
      });
      if (d <= 4)
        check("catalog.triangularity[" + in + "]", "coefficient of Y_k^(d-1) in W_alpha is +-W_(alpha without k)", in,
              "definition", [&] {
                bool ok = true;
                for (const auto& t : enum_sigma_d(d, cfg_.limits)) {
                  std::vector<int> hat, slots;
                  for (int s = 1; s <= d; ++s)
                    if (s != t.cls) {
                      hat.push_back(t.alpha[static_cast<std::size_t>(s - 1)]);
                      slots.push_back(s);
                    }
                  const Poly w = wronskian_W(t.alpha, d, d - 1);
                  const Poly c = coefficient_of(w, VarId::Y(t.cls, d - 1));
                  const Poly minor = wronskian_on_slots(hat, slots);
                  ok = ok && !minor.is_zero() && (c == minor || c == -minor);
                }
                return holds(ok, "triangular");
              });
    }
    for (int N : cfg_.N)
      for (int d : cfg_.d) {
        const std::string in = "N=" + std::to_string(N) + ",d=" + std::to_string(d);
        check("catalog.sigma-bar-count[" + in + "]", "|Sigma-bar_d| = N(N+1)/2 (N+1)^(d-2), N+1 for d=1", in,
              "closed-form", [&] {
                const auto all = enum_sigma_bar(N, d, cfg_.limits);
                bool consistent = true;
                for (const auto& x : all) consistent = consistent && x.cls == x.witness;
                if (d == 1) consistent = consistent && all == sigma_bar_degree_one(N);
                return same(sigma_bar_count_formula(N, d).get_str(),
                            std::to_string(all.size()) + (consistent ? "" : " (class mismatch)"));
              });
        if (d >= 2)
          check("catalog.multinomial-identity[" + in + "]", "sum of multinomials over |m|=d equals (N+1)^(d-2)", in,
                "closed-form", [&] {
                  bool ok = true;
                  for (int j = 0; j <= N; ++j)
                    for (int l = j + 1; l <= N; ++l)
                      ok = ok && multinomial_shift_sum(N, d, j, l) == ipow(Integer(N + 1), static_cast<unsigned long>(d - 2));
                  return holds(ok, "identity holds for all j<l");
                });
        check("catalog.generators[" + in + "]", "generators are nonzero invariants of order <= d-1", in, "definition",
              [&] {
                const auto fam = build_family(N, d, cfg_.limits);
                bool ok = true;
                for (const auto& g : fam.generators)
                  ok = ok && g.order <= d - 1 && is_diff_homogeneous(g.poly, d, JetContext{N, d - 1, d});
                return holds(ok, "all invariant");
              });
        check("catalog.substitution-compatibility[" + in + "]", "generator = symmetrization of the Wronskian tensor",
              in, "independent-computation", [&] {
                bool ok = true;
                for (const auto& idx : enum_sigma_bar(N, d, cfg_.limits)) {
                  const Tensor t = multilinear_to_tensor(wronskian_W(idx.flatten(), d, d - 1), d - 1, d);
                  ok = ok && build_generator(idx, N, d) == project_to_symmetric(t, function_of(idx.lengths()));
                }
                return holds(ok, "both constructions agree");
              });
        check("catalog.quotient-basis[" + in + "]", "G_d is a basis modulo order <= d-2", in, "independent-computation",
              [&] {
                const auto rep = verify_quotient_basis(N, d, cfg_.limits);
                return same(std::to_string(rep.full_dimension) + " - " + std::to_string(rep.low_dimension) + " = " +
                                sigma_bar_count_formula(N, d).get_str() + ", independent, spanning",
                            std::to_string(rep.full_dimension) + " - " + std::to_string(rep.low_dimension) + " = " +
                                std::to_string(rep.generators) + (rep.independent() ? ", independent" : ", dependent") +
                                (rep.spans() ? ", spanning" : ", not spanning"));
              });
      }
    check("catalog.composition-bijection", "m(f(m)) = m and f(m(f)) = f", "random non-decreasing functions",
          "definition", [&] {
            return property([&](Sampler& s, int) {
              const int N = s.uniform(1, 4), d = s.uniform(1, 6);
              std::vector<int> f;
              for (int i = 0; i < d; ++i) f.push_back(s.uniform(0, N));
              std::sort(f.begin(), f.end());
              const auto m = composition_of(f, N);
              return function_of(m) == f && composition_of(function_of(m), N) == m;
            });
          });

    const int dmax = max_of(cfg_.d);
    for (int N : cfg_.N)
      for (int k : cfg_.k) {
        const std::string in = "N=" + std::to_string(N) + ",k=" + std::to_string(k);
        check("catalog.counts[" + in + "]", "|G_1| = N+1, |G_i| = N(N+1)/2 (N+1)^(i-2)", in, "closed-form", [&] {
          const auto cat = build_catalog(N, k, cfg_.limits);
          std::vector<int> expected, computed;
          for (const auto& [w, m] : weighted_signature(N, k)) expected.push_back(static_cast<int>(m.get_si()));
          for (const auto& f : cat.families) computed.push_back(static_cast<int>(f.generators.size()));
          return same(detail::join(expected), detail::join(computed));
        });
        check("catalog.finite-generation[" + in + ",d<=" + std::to_string(dmax) + "]",
              "generator monomials span every degree", in + ",dmax=" + std::to_string(dmax), "independent-computation",
              [&] {
                const auto rep = verify_finite_generation(N, k, dmax, cfg_.limits);
                std::string expected, computed;
                for (const auto& g : rep.degrees) {
                  expected += (g.degree > 1 ? "," : "") + std::to_string(g.dimension);
                  computed += (g.degree > 1 ? "," : "") + std::to_string(g.rank) + (g.contained ? "" : "!");
                }
                return same(expected, computed);
              });
        check("catalog.minimality[" + in + "]", "no generator is redundant", in, "independent-computation", [&] {
          return holds(verify_minimality(N, k, cfg_.limits).pass(), "minimal");
        });
      }
  }

  SuiteConfig cfg_;
  Sampler sampler_;
  SuiteReport report_;
  std::map<std::tuple<int, int, int, int>, InvariantBasis> jet_cache_;
};

inline SuiteReport run_suite(const SuiteConfig& cfg) { return SuiteRunner(cfg).run(); }

// ---------------------------------------------------------------------------
// Export. JSON keys are sorted (nlohmann::json objects are ordered maps).

inline nlohmann::json to_json(const SuiteReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& r : report.records) {
    nlohmann::json c{{"checkId", r.check_id},   {"paperRef", r.result}, {"inputs", r.inputs},
                     {"expected", r.expected},  {"computed", r.computed}, {"status", to_string(r.status)},
                     {"source", r.source}};
    if (report.config.include_timing) c["elapsedMs"] = r.elapsed_ms;
    checks.push_back(std::move(c));
  }
  return {{"config", report.config.to_json()},
          {"checks", checks},
          {"summary",
           {{"total", report.records.size()},
            {"pass", report.count(CheckStatus::Pass)},
            {"fail", report.count(CheckStatus::Fail)},
            {"skipped", report.count(CheckStatus::Skipped)}}}};
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) r += c == '"' ? std::string("\"\"") : std::string(1, c);
  return r + "\"";
}

inline std::string export_report(const SuiteReport& report, const std::string& format) {
  if (format == "json") return to_json(report).dump(2) + "\n";
  std::ostringstream out;
  if (format == "csv") {
    out << "checkId,paperRef,inputs,expected,computed,status\n";
    for (const auto& r : report.records)
      out << csv_field(r.check_id) << ',' << csv_field(r.result) << ',' << csv_field(r.inputs) << ','
          << csv_field(r.expected) << ',' << csv_field(r.computed) << ',' << to_string(r.status) << '\n';
    return out.str();
  }
  if (format != "text") throw ConfigError("unknown format '" + format + "'");
  for (const auto& r : report.records) {
    std::string tag = r.status == CheckStatus::Pass ? "PASS" : r.status == CheckStatus::Fail ? "FAIL" : "SKIP";
    out << '[' << tag << "] " << r.check_id << "  " << r.result;
    if (report.config.include_timing) out << "  (" << static_cast<long>(r.elapsed_ms) << " ms)";
    out << '\n';
    if (r.status != CheckStatus::Pass) {
      out << "    expected: " << r.expected << '\n';
      out << "    computed: " << r.computed << '\n';
    }
  }
  out << report.count(CheckStatus::Pass) << " passed, " << report.count(CheckStatus::Fail) << " failed, "
      << report.count(CheckStatus::Skipped) << " skipped\n";
  return out.str();
}

}  // namespace diffhom
