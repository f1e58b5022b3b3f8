#include "mdap/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>

#include "mdap/circle.hpp"
#include "mdap/digitset.hpp"
#include "mdap/expsums.hpp"
#include "mdap/fourier.hpp"
#include "mdap/primetables.hpp"
#include "mdap/sievenumerics.hpp"
#include "mdap/sieveweights.hpp"

namespace mdap {

namespace {

struct Params {
  int b = 10, a0 = 7, r = -1, k = 3;
  int k_min = 2, k_max = 4;
  u64 X = 0, D = 10, D1 = 4, D2 = 4, c = 1, d = 1, Q = 2, B = 2, L = 10, M = 1, N = 1;
  u64 p_limit = 1'000'000, mertens_y = 1'000'000, trials = 100, U = 0, d_max = 50;
  double C = 2.0, z = 5.0, u = 1.5, delta = 1e-3, eps = 1e-6, alpha = 3.0, theta = 0.0;
  std::string kind = "abs_max_c";
  u64 seed = 0;
  std::string format = "json";
  std::string output;
};

DigitSystem make_ds(const Params& p) {
  return p.r < 0 ? DigitSystem(p.b, p.a0) : DigitSystem(p.b, p.a0, p.r);
}

Json base_config(const Params& p) {
  Json c;
  c["seed"] = p.seed;
  return c;
}

void digit_config(Json& c, const Params& p) {
  c["b"] = p.b;
  c["a0"] = p.a0;
  if (p.r >= 0) c["r"] = p.r; else c["r"] = nullptr;
}

double rand_unit(std::mt19937_64& g) { return double(g() >> 11) * 0x1.0p-53; }

using Handler = std::function<void(const Params&, Json& config, Json& result, Json& rows)>;

std::map<std::string, Handler> handlers() {
  std::map<std::string, Handler> h;

  h["count"] = [](const Params& p, Json& cfg, Json& res, Json&) {
    digit_config(cfg, p);
    cfg["k"] = p.k;
    DigitSystem ds = make_ds(p);
    res["X"] = ds.modulus(p.k);
    res["count"] = ds.count(p.k);
    res["zeta"] = real12(ds.zeta());
    res["kappa"] = ds.kappa().str();
  };

  h["density"] = [](const Params& p, Json& cfg, Json& res, Json&) {
    u64 X = p.X ? p.X : 1'000'000;
    cfg["b"] = p.b;
    cfg["a0"] = p.a0;
    cfg["X"] = X;
    PrimeTables t(X);
    auto r = count_missing_digit_primes(t, DigitSystem(p.b, p.a0), X);
    res["X"] = X;
    res["count"] = r.count;
    res["predicted"] = real12(r.predicted);
    res["ratio"] = real12(r.ratio);
  };

  h["fourier-stats"] = [](const Params& p, Json& cfg, Json& res, Json& rows) {
    digit_config(cfg, p);
    cfg["k_min"] = p.k_min;
    cfg["k_max"] = p.k_max;
    require(p.k_min >= 1 && p.k_min <= p.k_max, "need 1 <= k_min <= k_max");
    DigitSystem ds = make_ds(p);
    double lb = std::log(double(p.b));
    double lo = 1.0 / (2.0 * lb), hi = 2.0 * (1.0 + 3.0 / lb);
    bool in_band = true;
    double max_change = 0.0, prev = 0.0;
    for (int k = p.k_min; k <= p.k_max; ++k) {
      auto st = l1_and_cb(ds, k);
      rows.push_back({{"k", k}, {"l1_total", real12(st.l1_total)}, {"c_b_estimate", real12(st.c_b_estimate)},
                      {"alpha_b_estimate", real12(st.alpha_b_estimate)}});
      in_band = in_band && st.c_b_estimate >= lo && st.c_b_estimate <= hi;
      if (k > p.k_min) max_change = std::max(max_change, std::fabs(st.c_b_estimate - prev) / prev);
      prev = st.c_b_estimate;
    }
    res["band_lo"] = real12(lo);
    res["band_hi"] = real12(hi);
    res["max_relative_change"] = real12(max_change);
    res["in_band"] = in_band;
  };

  h["hybrid"] = [](const Params& p, Json& cfg, Json& res, Json&) {
    digit_config(cfg, p);
    cfg["k"] = p.k;
    cfg["Q"] = p.Q;
    cfg["B"] = p.B;
    auto r = hybrid_sum(make_ds(p), p.k, p.Q, p.B);
    res["Q"] = p.Q;
    res["B"] = p.B;
    res["points"] = r.points;
    res["value"] = real12(r.value);
    res["bound"] = real12(r.bound);
    res["ratio"] = real12(r.ratio);
  };

  h["arcs"] = [](const Params& p, Json& cfg, Json& res, Json& rows) {
    digit_config(cfg, p);
    cfg["k"] = p.k;
    cfg["C"] = real12(p.C);
    cfg["d"] = p.d;
    cfg["c"] = p.c;
    DigitSystem ds = make_ds(p);
    u64 X = ds.modulus(p.k);
    PrimeTables t(std::max<u64>(X, 2));
    auto s = arc_split(t, ds, X, p.d, p.c, p.C);
    std::array<u64, 4> counts{};
    for (u64 s2 = 0; s2 < X; ++s2) ++counts[int(classify_arc(s2, X, p.C).kind)];
    res["X"] = X;
    res["C"] = real12(p.C);
    res["d"] = p.d;
    res["c"] = p.c;
    res["major_re"] = real12(s.major.real());
    res["major_im"] = real12(s.major.imag());
    res["minor_re"] = real12(s.minor.real());
    res["minor_im"] = real12(s.minor.imag());
    res["direct"] = real12(s.direct);
    res["main_term"] = real12(s.main_term);
    res["conservation_error"] = real12(s.conservation_error);
    for (int i = 0; i < 4; ++i)
      rows.push_back({{"kind", arc_name(ArcKind(i))}, {"count", counts[i]},
                      {"contribution_re", real12(s.by_kind[i].real())},
                      {"contribution_im", real12(s.by_kind[i].imag())}});
    if (s.conservation_error > 1e-5) throw CheckFailed("arc split does not conserve the direct count");
  };

  h["bv-table"] = [](const Params& p, Json& cfg, Json& res, Json& rows) {
    digit_config(cfg, p);
    cfg["k"] = p.k;
    cfg["D"] = p.D;
    DigitSystem ds = make_ds(p);
    u64 X = ds.modulus(p.k);
    PrimeTables t(std::max<u64>(X, 2));
    WeightSpec ws;
    ws.kind = WeightKind::abs_max_c;
    ws.D = p.D;
    auto rep = weighted_discrepancy(t, ds, X, ws);
    for (const auto& r : rep.rows)
      rows.push_back({{"d", r.d}, {"c_star", r.c}, {"E", real12(r.E)}, {"abs_E", real12(std::fabs(r.E))}});
    res["X"] = X;
    res["D"] = p.D;
    res["aggregate"] = real12(rep.aggregate);
  };

  h["weighted-bv"] = [](const Params& p, Json& cfg, Json& res, Json& rows) {
    digit_config(cfg, p);
    cfg["k"] = p.k;
    cfg["kind"] = p.kind;
    cfg["D"] = p.D;
    cfg["c"] = p.c;
    cfg["D1"] = p.D1;
    cfg["D2"] = p.D2;
    cfg["z"] = real12(p.z);
    cfg["L"] = p.L;
    DigitSystem ds = make_ds(p);
    u64 X = ds.modulus(p.k);
    PrimeTables t(std::max<u64>(X, 2));
    WeightSpec ws;
    ws.kind = parse_weight_kind(p.kind);
    ws.D = p.D;
    ws.c = p.c;
    ws.D1 = p.D1;
    ws.D2 = p.D2;
    ws.L = p.L;
    u64 b = u64(p.b);
    if (ws.kind == WeightKind::well_factorable) {
      std::mt19937_64 g(p.seed);
      std::vector<double> x1(p.D1 + 1, 0.0), x2(p.D2 + 1, 0.0);
      for (u64 i = 1; i <= p.D1; ++i) x1[i] = (g() & 1) ? 1.0 : -1.0;
      for (u64 i = 1; i <= p.D2; ++i) x2[i] = (g() & 1) ? 1.0 : -1.0;
      ws.xi = well_factorable_xi(x1, x2, p.D1 * p.D2);
    } else if (ws.kind == WeightKind::sieve_semi) {
      SieveSpec sp{1, SieveSide::lower, double(p.D), p.z, primes_3mod4_not_dividing(b)};
      ws.sieve = build_weights(sp, t);
    } else if (ws.kind == WeightKind::sieve_lin) {
      SieveSpec sp{2, SieveSide::upper, double(p.D), p.z, [b](u64 q) { return (2 * b) % q != 0; }};
      ws.sieve = build_weights(sp, t);
      ws.h = [](u64) { return 1.0; };
    }
    auto rep = weighted_discrepancy(t, ds, X, ws);
    for (const auto& r : rep.rows)
      rows.push_back({{"d", r.d}, {"d1", r.d1}, {"d2", r.d2}, {"c", r.c}, {"E", real12(r.E)},
                      {"weight", real12(r.weight)}});
    double again = recompute_aggregate(rep);
    res["kind"] = p.kind;
    res["X"] = X;
    res["rows"] = rep.rows.size();
    res["aggregate"] = real12(rep.aggregate);
    res["recomputed_aggregate"] = real12(again);
    if (std::fabs(again - rep.aggregate) > 1e-9 * std::max(1.0, std::fabs(again)))
      throw CheckFailed("aggregate does not match its rows");
  };

  h["sieve-fns"] = [](const Params& p, Json& cfg, Json& res, Json& rows) {
    cfg["u"] = real12(p.u);
    res["u"] = real12(p.u);
    int n = 0;
    for (const char* name : {"sem_F", "sem_f", "lin_F", "lin_f"}) {
      try {
        double v = sieve_fn(parse_sieve_fn(name), p.u);
        rows.push_back({{"function", name}, {"value", real12(v)}});
        ++n;
      } catch (const PreconditionError&) {
      }
    }
    require(n > 0, "u lies outside every sieve-function domain");
  };

  h["integrals"] = [](const Params& p, Json& cfg, Json& res, Json&) {
    cfg["delta"] = real12(p.delta);
    cfg["eps"] = real12(p.eps);
    double rho_sem = 3.0 * (1.0 - 4.0 * p.delta) / 7.0 - p.eps;
    double rho_lin = 0.5 - 2.0 * p.delta - p.eps;
    double alpha = 1.0 / (1.0 / 3.0 - 2.0 * p.delta) + p.eps;
    double u = alpha * rho_sem;
    double is = I_sem(rho_sem, alpha), il = I_lin(rho_lin, alpha);
    // closed form against quadrature of 1/sqrt(y(y-1)) via y = 1 + s^2
    double quad = adaptive_simpson([](double s) { return 2.0 / std::sqrt(1.0 + s * s); }, 0.0,
                                   std::sqrt(u - 1.0), 1e-12) / std::sqrt(rho_sem);
    res["delta"] = real12(p.delta);
    res["eps"] = real12(p.eps);
    res["rho_sem"] = real12(rho_sem);
    res["rho_lin"] = real12(rho_lin);
    res["alpha"] = real12(alpha);
    res["u"] = real12(u);
    res["I_sem"] = real12(is);
    res["I_lin"] = real12(il);
    res["I_lin_scaled"] = real12(10.0 / 9.0 * il);
    res["difference"] = real12(is - 10.0 / 9.0 * il);
    res["closed_form_check"] = real12(std::fabs(quad - is));
  };

  h["constants"] = [](const Params& p, Json& cfg, Json& res, Json&) {
    cfg["p_limit"] = p.p_limit;
    cfg["mertens_y"] = p.mertens_y;
    PrimeTables t(std::max(p.p_limit, p.mertens_y));
    auto e = euler_constants(t, p.p_limit);
    auto put = [&res](const std::string& n, const Interval& iv) {
      res[n] = real12(iv.value);
      res[n + "_lo"] = real12(iv.lo);
      res[n + "_hi"] = real12(iv.hi);
    };
    res["p_limit"] = p.p_limit;
    put("C1", e.C1);
    put("C2", e.C2);
    put("C3", e.C3);
    put("singular", e.singular);
    auto m = mertens_3mod4(t, p.mertens_y);
    res["mertens_y"] = p.mertens_y;
    res["mertens_product"] = real12(m.product);
    res["mertens_predicted"] = real12(m.predicted);
    res["mertens_ratio"] = real12(m.ratio);
  };

  h["two-squares"] = [](const Params& p, Json& cfg, Json& res, Json&) {
    u64 N = p.X ? p.X : 100'000;
    cfg["N"] = N;
    PrimeTables t(std::max<u64>(N, 2));
    // pair oracle: n = x^2 + y^2 with gcd(x, y) = 1
    std::vector<char> hit(N + 1, 0);
    for (u64 x = 0; x * x <= N; ++x)
      for (u64 y = x; x * x + y * y <= N; ++y)
        if (std::gcd(x, y) == 1) hit[x * x + y * y] = 1;
    u64 inB = 0, inBcal = 0, bad = 0;
    for (u64 n = 1; n <= N; ++n) {
      auto qc = t.quadratic_class(n);
      inB += qc.in_B;
      inBcal += qc.in_Bcal;
      bad += (qc.in_B != bool(hit[n]));
    }
    res["N"] = N;
    res["in_B_count"] = inB;
    res["in_Bcal_count"] = inBcal;
    res["mismatches"] = bad;
    if (bad) throw CheckFailed("two-squares classifier disagrees with the pair oracle");
  };

  h["vaughan-check"] = [](const Params& p, Json& cfg, Json& res, Json& rows) {
    u64 X = p.X ? p.X : 10'000;
    u64 U = p.U ? p.U : u64(std::ceil(std::cbrt(double(X)) - 1e-9));
    cfg["X"] = X;
    cfg["U"] = U;
    cfg["trials"] = p.trials;
    cfg["d_max"] = p.d_max;
    PrimeTables t(std::max<u64>(X, 2));
    std::mt19937_64 g(p.seed);
    double worst = 0.0;
    for (u64 i = 0; i < p.trials; ++i) {
      u64 d = 1 + g() % p.d_max;
      u64 c = g() % d;
      double theta = rand_unit(g);
      auto v = vaughan_decompose(t, X, U, d, c, theta);
      worst = std::max(worst, v.residual);
      rows.push_back({{"trial", i}, {"d", d}, {"c", c}, {"theta", real12(theta)}, {"residual", real12(v.residual)}});
    }
    res["X"] = X;
    res["U"] = U;
    res["trials"] = p.trials;
    res["max_residual"] = real12(worst);
    if (worst > 1e-6) throw CheckFailed("Vaughan residual above 1e-6");
  };

  h["mikawa"] = [](const Params& p, Json& cfg, Json& res, Json&) {
    u64 X = p.X ? p.X : 10'000;
    cfg["M"] = p.M;
    cfg["N"] = p.N;
    cfg["X"] = X;
    cfg["theta"] = real12(p.theta);
    PrimeTables t(std::max<u64>(2 * p.N, 2));
    auto ta = dirichlet_approx(p.theta, u64(std::max(1.0, std::sqrt(double(X)))), double(X));
    auto r = mikawa_W(t, p.M, p.N, X, ta);
    res["M"] = p.M;
    res["N"] = p.N;
    res["X"] = X;
    res["a"] = ta.a;
    res["q"] = ta.q;
    res["beta"] = real12(ta.beta);
    res["W"] = real12(r.W);
    res["bound"] = real12(r.bound);
    res["ratio"] = real12(r.ratio);
  };

  h["buchstab-app"] = [](const Params& p, Json& cfg, Json& res, Json&) {
    u64 X = p.X ? p.X : 100'000;
    digit_config(cfg, p);
    cfg["X"] = X;
    cfg["alpha"] = real12(p.alpha);
    PrimeTables t(X);
    auto r = buchstab_and_app(t, make_ds(p), X, p.alpha);
    res["X"] = X;
    res["alpha"] = real12(p.alpha);
    res["S"] = r.S;
    res["T"] = r.T;
    res["total"] = r.total;
    res["app_count"] = r.app_count;
    res["family_size"] = r.family_size;
    res["predicted_scale"] = real12(r.predicted_scale);
  };

  return h;
}

Json error_record(int code, const std::string& kind, const std::string& msg) {
  return {{"error", {{"code", code}, {"kind", kind}, {"message", msg}}}};
}

}  // namespace

CliOutcome run_cli(const std::vector<std::string>& args) {
  Params p;
  CLI::App app{"Missing-digit primes in progressions: desk-scale computations"};
  app.require_subcommand(1);
  std::string schema_name;
  auto* schema_cmd = app.add_subcommand("schema", "Print the report schema of a subcommand");
  schema_cmd->add_option("name", schema_name)->required();

  auto common = [&p](CLI::App* s) {
    s->add_option("--seed", p.seed, "RNG seed recorded in the report");
    s->add_option("--format", p.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--output", p.output, "write the report here instead of stdout");
  };
  auto digits = [&p](CLI::App* s, bool with_k) {
    s->add_option("--b", p.b, "base");
    s->add_option("--a0", p.a0, "excluded digit");
    s->add_option("--r", p.r, "last-digit residue (omit for none)");
    if (with_k) s->add_option("--k", p.k, "digit length, X = b^k");
  };

  static const std::map<std::string, std::string> blurbs = {
      {"count", "Size of the digit set below b^k"},
      {"density", "Primes avoiding a digit, against the density prediction"},
      {"fourier-stats", "L1 norm of the digit transform per k"},
      {"hybrid", "Large-sieve style hybrid sum of |hat|"},
      {"arcs", "Major/minor arc split of a progression count"},
      {"bv-table", "Worst-residue discrepancy per modulus"},
      {"weighted-bv", "Discrepancy averaged against a chosen weight family"},
      {"sieve-fns", "Sieve upper and lower functions at u"},
      {"integrals", "Sieve integrals for the two-squares application"},
      {"constants", "Truncated Euler products with tail intervals"},
      {"two-squares", "Primitive two-squares classifier against brute force"},
      {"vaughan-check", "Residuals of the five-term identity split"},
      {"mikawa", "Weyl-differenced divisor sum W"},
      {"buchstab-app", "Buchstab split and application count"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : subcommand_names()) {
    subs[name] = app.add_subcommand(name, blurbs.at(name));
    common(subs[name]);
  }
  digits(subs["count"], true);
  subs["density"]->add_option("--b", p.b);
  subs["density"]->add_option("--a0", p.a0);
  subs["density"]->add_option("--X", p.X);
  digits(subs["fourier-stats"], false);
  subs["fourier-stats"]->add_option("--k-min", p.k_min);
  subs["fourier-stats"]->add_option("--k-max", p.k_max);
  digits(subs["hybrid"], true);
  subs["hybrid"]->add_option("--Q", p.Q);
  subs["hybrid"]->add_option("--B", p.B);
  digits(subs["arcs"], true);
  subs["arcs"]->add_option("--C", p.C);
  subs["arcs"]->add_option("--d", p.d);
  subs["arcs"]->add_option("--c", p.c);
  digits(subs["bv-table"], true);
  subs["bv-table"]->add_option("--D", p.D);
  digits(subs["weighted-bv"], true);
  subs["weighted-bv"]->add_option("--kind", p.kind);
  subs["weighted-bv"]->add_option("--D", p.D);
  subs["weighted-bv"]->add_option("--c", p.c);
  subs["weighted-bv"]->add_option("--D1", p.D1);
  subs["weighted-bv"]->add_option("--D2", p.D2);
  subs["weighted-bv"]->add_option("--z", p.z);
  subs["weighted-bv"]->add_option("--L", p.L);
  subs["sieve-fns"]->add_option("--u", p.u);
  subs["integrals"]->add_option("--delta", p.delta);
  subs["integrals"]->add_option("--eps", p.eps);
  subs["constants"]->add_option("--p-limit", p.p_limit);
  subs["constants"]->add_option("--mertens-y", p.mertens_y);
  subs["two-squares"]->add_option("--N", p.X);
  subs["vaughan-check"]->add_option("--X", p.X);
  subs["vaughan-check"]->add_option("--U", p.U);
  subs["vaughan-check"]->add_option("--trials", p.trials);
  subs["vaughan-check"]->add_option("--d-max", p.d_max);
  subs["mikawa"]->add_option("--M", p.M);
  subs["mikawa"]->add_option("--N", p.N);
  subs["mikawa"]->add_option("--X", p.X);
  subs["mikawa"]->add_option("--theta", p.theta);
  digits(subs["buchstab-app"], false);
  subs["buchstab-app"]->add_option("--X", p.X);
  subs["buchstab-app"]->add_option("--alpha", p.alpha);

  CliOutcome outcome;
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    outcome.out = app.help();
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.exit_code = 2;
    outcome.err = error_record(2, "usage", e.what()).dump() + "\n";
    return outcome;
  }

  try {
    if (schema_cmd->parsed()) {
      outcome.out = schema_json(report_schema(schema_name)).dump(2) + "\n";
      return outcome;
    }
    std::string name;
    for (auto& [n, s] : subs)
      if (s->parsed()) name = n;
    Json report;
    report["subcommand"] = name;
    Json cfg = base_config(p);
    Json res = Json::object(), rows = Json::array();
    handlers().at(name)(p, cfg, res, rows);
    report["config"] = cfg;
    report["result"] = res;
    report["rows"] = rows;
    Schema sch = report_schema(name);
    std::string why;
    if (!validate_report(report, sch, &why)) throw CheckFailed("report fails its schema: " + why);
    std::string text = p.format == "csv" ? render_csv(report, sch) : render_json(report);
    if (!p.output.empty()) {
      std::ofstream f(p.output, std::ios::binary);
      if (!f) throw PreconditionError("cannot open output file " + p.output);
      f << text;
    } else {
      outcome.out = text;
    }
  } catch (const Error& e) {
    outcome.exit_code = e.exit_code();
    outcome.err = error_record(e.exit_code(), e.kind(), e.what()).dump() + "\n";
  } catch (const std::exception& e) {
    outcome.exit_code = 4;
    outcome.err = error_record(4, "internal", e.what()).dump() + "\n";
  }
  return outcome;
}

}  // namespace mdap
