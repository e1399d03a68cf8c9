#include "curvestats/cli.hpp"

#include "curvestats/exactcomb.hpp"
#include "curvestats/traceformula.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace curvestats::cli {

using nlohmann::json;

const char* kGapDisclaimer =
    "The large-genus Poisson limit and the q >> g regime cannot be instantiated at desk scale. "
    "The gap columns compare finite, unconditional data against the limiting prediction and "
    "carry no pass/fail judgment.";

namespace {

std::string dec(const Rational& r, int digits) { return to_decimal_string(r, digits); }

json rational_json(const Rational& r) { return to_fraction_string(r); }

}  // namespace

json predict_payload(long q, int n_max, int digits, int window_hi) {
    if (q < 2) throw std::invalid_argument("predict: q must be at least 2");
    if (n_max < 0) throw std::invalid_argument("predict: n_max must be nonnegative");
    Integer qi(q);
    Rational lam = exactcomb::lambda_of_q(qi);
    double lam_d = to_double(lam);
    if (window_hi < 0) window_hi = static_cast<int>(std::ceil(lam_d + 10.0 * std::sqrt(lam_d))) + 2;

    json payload;
    payload["q"] = q;
    payload["lambda"] = rational_json(lam);
    payload["lambda_decimal"] = dec(lam, 12);
    json moments = json::array();
    for (int n = 1; n <= n_max; ++n) {
        json row;
        row["n"] = n;
        row["raw"] = rational_json(exactcomb::predicted_moment(n, qi));
        row["falling"] = rational_json(exactcomb::predicted_falling_moment(n, qi));
        moments.push_back(row);
    }
    payload["moments"] = moments;
    exactcomb::CertifiedPoisson pois(lam, digits);
    json pmf = json::array();
    for (int n = 0; n <= window_hi; ++n) {
        auto v = pois.pmf(n);
        json row;
        row["n"] = n;
        row["value"] = dec(v.center, digits);
        row["radius"] = dec(v.radius, digits + 2);
        pmf.push_back(row);
    }
    payload["pmf"] = pmf;
    payload["pmf_precision_digits"] = digits;
    payload["window"] = json::array({0, window_hi});
    auto total = pois.pmf_sum(window_hi);
    Rational outside = 1 - (total.center - total.radius);
    payload["pmf_mass_outside_window"] = dec(outside < 0 ? Rational(0) : outside, digits);
    return payload;
}

json series_payload(int n, int depth) {
    if (n < 0 || depth < 0) throw std::invalid_argument("series: n and depth must be nonnegative");
    json payload;
    payload["n"] = n;
    payload["depth"] = depth;
    json parts = json::array(), multis = json::array(), dims = json::array();
    for (const auto& p : exactcomb::partition_numbers(depth)) parts.push_back(p.str());
    auto q = exactcomb::multiset_series(n, depth);
    for (int j = 0; j <= depth; ++j) multis.push_back(numerator(q.coeff(j)).str());
    for (const auto& d : exactcomb::graded_dimensions(n, depth)) dims.push_back(d.str());
    payload["partition_numbers"] = parts;
    payload["multiset_coefficients"] = multis;
    payload["hilbert_dimensions"] = dims;
    return payload;
}

json trace_payload(int g_lo, int g_hi, int n, long q, int depth) {
    if (g_lo < 2) throw std::invalid_argument("trace: g must be at least 2");
    if (g_hi < g_lo) throw std::invalid_argument("trace: empty genus range");
    if (q < 2) throw std::invalid_argument("trace: q must be at least 2");
    Integer qi(q);
    // truncated target sum_{j<=depth} q^-j dim_{2j}
    auto dims = exactcomb::graded_dimensions(n, depth);
    Rational target = 0, qinv = Rational(1, qi), qpow = 1;
    for (int j = 0; j <= depth; ++j) {
        target += qpow * Rational(dims[static_cast<size_t>(j)]);
        qpow *= qinv;
    }
    json payload;
    payload["q"] = q;
    payload["n"] = n;
    payload["depth"] = depth;
    payload["hs_target"] = rational_json(target);
    payload["hs_target_decimal"] = dec(target, 30);
    json rows = json::array();
    Rational final_gap = 0;
    for (int g = g_lo; g <= g_hi; ++g) {
        auto prof = traceformula::make_trace_profile(g, n, qi);
        Rational gap = target - prof.stable_normalized;
        if (gap < 0) gap = -gap;
        json row;
        row["g"] = g;
        row["d"] = prof.d;
        row["stable"] = rational_json(prof.stable_normalized);
        row["stable_decimal"] = dec(prof.stable_normalized, 20);
        row["unstable_tail"] = rational_json(prof.unstable_tail);
        row["unstable_tail_decimal"] = dec(prof.unstable_tail, 20);
        row["unstable_tail_bound"] = prof.unstable_bound;
        row["ratio"] = rational_json(traceformula::ratio_prediction(g, n, qi));
        row["gap_to_target_decimal"] = dec(gap, 20);
        rows.push_back(row);
        if (g == g_hi) final_gap = gap;
    }
    payload["rows"] = rows;
    payload["final_gap"] = rational_json(final_gap);
    payload["final_gap_decimal"] = dec(final_gap, 30);
    return payload;
}

json rmt_payload(const rmt::ExperimentReport& rep) {
    json payload;
    payload["g"] = rep.params.g;
    payload["q"] = rep.params.q;
    payload["seed"] = rep.params.seed;
    payload["method"] = rmt::method_name(rep.params.method);
    payload["n_max"] = rep.params.n_max;
    json cfg;
    cfg["discreteness"] = rep.params.config.discreteness;
    cfg["epsilon"] = rep.params.config.epsilon;
    cfg["positivity"] = rep.params.config.positivity;
    cfg["more_positivity"] = rep.params.config.more_positivity;
    cfg["max_index"] = rep.params.config.max_index;
    json pairs = json::array();
    for (auto [a, b] : rep.params.config.effective_pairs()) pairs.push_back(json::array({a, b}));
    cfg["divisor_pairs"] = pairs;
    payload["config"] = cfg;
    payload["num_samples"] = rep.num_samples;
    payload["num_accepted"] = rep.num_accepted;
    payload["acceptance_rate"] = rep.acceptance_rate;
    payload["zero_accepted"] = rep.zero_accepted;
    payload["sampler_retries"] = rep.sampler_retries;
    json hist = json::object();
    for (auto& [k, v] : rep.histogram) hist[std::to_string(k)] = v;
    payload["histogram"] = hist;
    payload["raw_moments"] = rep.raw_moments;
    payload["falling_moments"] = rep.falling_moments;
    json ref;
    ref["lambda"] = rational_json(exactcomb::lambda_of_q(Integer(rep.params.q)));
    json praw = json::array(), pfall = json::array();
    for (auto& r : rep.poisson_raw) praw.push_back(rational_json(r));
    for (auto& r : rep.poisson_falling) pfall.push_back(rational_json(r));
    ref["poisson_raw"] = praw;
    ref["poisson_falling"] = pfall;
    payload["reference"] = ref;
    payload["tv_distance"] = rep.tv_distance;
    payload["window"] = json::array({rep.window_lo, rep.window_hi});
    payload["poisson_mass_outside"] = rep.poisson_mass_outside;
    payload["histogram_mass_outside"] = rep.histogram_mass_outside;
    return payload;
}

json rmt_payload(const rmt::ExperimentParams& params) { return rmt_payload(rmt::run_experiment(params)); }

json census_payload(census::CurveKind kind, int p, int k, int n_max, int max_ext, int workers) {
    const FiniteField& F = FiniteField::get(p, k);
    auto rep = census::run_census(kind, F, n_max, max_ext, workers);
    json payload;
    payload["kind"] = census::kind_name(kind);
    json field;
    field["p"] = p;
    field["k"] = k;
    field["q"] = F.size();
    field["modulus"] = F.modulus_string();
    payload["field"] = field;
    json group;
    group["order"] = rep.dist.group.order.str();
    group["formula"] = rep.dist.group.formula;
    payload["group"] = group;
    payload["candidate_count"] = rep.dist.candidate_count;
    payload["smooth_count"] = rep.dist.smooth_count;
    json hist = json::object(), masses = json::object();
    for (auto& [n, c] : rep.dist.counts) hist[std::to_string(n)] = c.str();
    for (auto& [n, m] : rep.dist.masses) masses[std::to_string(n)] = to_fraction_string(m);
    payload["histogram"] = hist;
    payload["masses"] = masses;
    payload["total_mass"] = rational_json(rep.dist.total_mass);
    json raw = json::array(), fall = json::array(), fall2 = json::array();
    for (auto& r : rep.raw.exact) raw.push_back(rational_json(r));
    for (auto& r : rep.falling.exact) fall.push_back(rational_json(r));
    for (auto& r : rep.falling_direct) fall2.push_back(rational_json(r));
    payload["raw_moments"] = raw;
    payload["falling_moments"] = fall;
    payload["falling_moments_direct"] = fall2;
    payload["dual_paths_agree"] = rep.dual_paths_agree;
    payload["zeta_checks"] = json{{"checked", rep.zeta_checked}, {"passed", rep.zeta_passed}};
    payload["weil_checks"] = json{{"checked", rep.weil_checked}, {"passed", rep.weil_passed}};
    payload["max_ext"] = rep.max_ext;
    return payload;
}

json report_payload(const json& census_env, const json& rmt_env, long q) {
    auto check = [](const json& env, const std::string& want) {
        if (!env.contains("command") || env["command"] != want || !env.contains("results"))
            throw std::invalid_argument("report: input is not a " + want + " envelope");
    };
    check(census_env, "census");
    check(rmt_env, "rmt");
    const json& cres = census_env["results"];
    const json& rres = rmt_env["results"];
    if (cres["field"]["q"].get<long>() != q || rres["q"].get<long>() != q)
        throw std::invalid_argument("report: q mismatch between inputs and --q");
    Integer qi(q);
    Rational lam = exactcomb::lambda_of_q(qi);
    json payload;
    payload["q"] = q;
    payload["lambda"] = rational_json(lam);
    size_t n_census = cres["falling_moments"].size();
    size_t n_rmt = rres["falling_moments"].size();
    json orders = json::array();
    for (size_t i = 0; i < std::min(n_census, n_rmt); ++i) {
        int n = static_cast<int>(i) + 1;
        Rational cf = parse_fraction(cres["falling_moments"][i].get<std::string>());
        double rf = rres["falling_moments"][i].get<double>();
        Rational ln = exactcomb::predicted_falling_moment(n, qi);
        Rational gap_c = cf - ln;
        if (gap_c < 0) gap_c = -gap_c;
        json row;
        row["n"] = n;
        row["census_falling"] = rational_json(cf);
        row["census_falling_decimal"] = dec(cf, 12);
        row["rmt_falling"] = rf;
        row["lambda_power"] = rational_json(ln);
        row["lambda_power_decimal"] = dec(ln, 12);
        row["gap_census"] = dec(gap_c, 12);
        row["gap_rmt"] = std::abs(rf - to_double(ln));
        row["gap_between"] = std::abs(to_double(cf) - rf);
        orders.push_back(row);
    }
    payload["orders"] = orders;
    payload["note"] = kGapDisclaimer;
    return payload;
}

json make_envelope(const std::string& command, const json& parameters, const json& results,
                   double duration_seconds) {
    json env;
    env["command"] = command;
    env["version"] = kVersion;
    env["parameters"] = parameters;
    env["results"] = results;
    env["duration_seconds"] = duration_seconds;
    return env;
}

std::string render_csv(const std::string& command, const json& payload) {
    std::ostringstream out;
    out << "# command=" << command << "\n";
    if (command == "predict") {
        out << "# lambda=" << payload["lambda"].get<std::string>() << "\n";
        out << "n,raw,falling\n";
        for (const auto& row : payload["moments"])
            out << row["n"] << "," << row["raw"].get<std::string>() << ","
                << row["falling"].get<std::string>() << "\n";
        out << "# pmf precision_digits=" << payload["pmf_precision_digits"] << "\n";
        out << "n,value,radius\n";
        for (const auto& row : payload["pmf"])
            out << row["n"] << "," << row["value"].get<std::string>() << ","
                << row["radius"].get<std::string>() << "\n";
    } else if (command == "series") {
        out << "j,partition,multiset,hilbert_dim\n";
        size_t depth = payload["partition_numbers"].size();
        for (size_t j = 0; j < depth; ++j)
            out << j << "," << payload["partition_numbers"][j].get<std::string>() << ","
                << payload["multiset_coefficients"][j].get<std::string>() << ","
                << payload["hilbert_dimensions"][j].get<std::string>() << "\n";
    } else if (command == "trace") {
        out << "# hs_target=" << payload["hs_target_decimal"].get<std::string>()
            << " final_gap=" << payload["final_gap_decimal"].get<std::string>() << "\n";
        out << "g,d,stable,unstable_tail,ratio,gap_to_target\n";
        for (const auto& row : payload["rows"])
            out << row["g"] << "," << row["d"] << "," << row["stable_decimal"].get<std::string>()
                << "," << row["unstable_tail_decimal"].get<std::string>() << ","
                << row["ratio"].get<std::string>() << ","
                << row["gap_to_target_decimal"].get<std::string>() << "\n";
    } else if (command == "rmt") {
        out << "# g=" << payload["g"] << " q=" << payload["q"] << " seed=" << payload["seed"]
            << " acceptance_rate=" << payload["acceptance_rate"] << " tv=" << payload["tv_distance"]
            << "\n";
        out << "N,count\n";
        for (auto it = payload["histogram"].begin(); it != payload["histogram"].end(); ++it)
            out << it.key() << "," << it.value().get<long>() << "\n";
    } else if (command == "census") {
        out << "# kind=" << payload["kind"].get<std::string>()
            << " q=" << payload["field"]["q"] << " total_mass="
            << payload["total_mass"].get<std::string>() << "\n";
        out << "N,count,mass\n";
        for (auto it = payload["histogram"].begin(); it != payload["histogram"].end(); ++it)
            out << it.key() << "," << it.value().get<std::string>() << ","
                << payload["masses"][it.key()].get<std::string>() << "\n";
    } else if (command == "report") {
        out << "# " << payload["note"].get<std::string>() << "\n";
        out << "n,census_falling,rmt_falling,lambda_power,gap_census,gap_rmt\n";
        for (const auto& row : payload["orders"])
            out << row["n"] << "," << row["census_falling_decimal"].get<std::string>() << ","
                << row["rmt_falling"].get<double>() << ","
                << row["lambda_power_decimal"].get<std::string>() << ","
                << row["gap_census"].get<std::string>() << "," << row["gap_rmt"].get<double>()
                << "\n";
    } else {
        throw std::invalid_argument("render_csv: unknown command " + command);
    }
    return out.str();
}

std::pair<int, int> parse_field_spec(const std::string& spec) {
    auto caret = spec.find('^');
    long p, k;
    if (caret != std::string::npos) {
        p = std::stol(spec.substr(0, caret));
        k = std::stol(spec.substr(caret + 1));
    } else {
        long q = std::stol(spec);
        if (q < 2) throw std::invalid_argument("field spec: q must be at least 2");
        p = 2;
        while (q % p != 0) ++p;
        k = 0;
        long t = q;
        while (t % p == 0) {
            t /= p;
            ++k;
        }
        if (t != 1) throw std::invalid_argument("field spec: " + spec + " is not a prime power");
    }
    if (p < 2 || k < 1) throw std::invalid_argument("field spec: bad p^k");
    return {static_cast<int>(p), static_cast<int>(k)};
}

namespace {

void emit(const json& envelope, const std::string& command, const std::string& out_path,
          const std::string& format) {
    std::string text;
    if (format == "json") {
        text = envelope.dump(2) + "\n";
    } else if (format == "csv") {
        text = render_csv(command, envelope["results"]);
    } else {
        throw std::invalid_argument("unknown format: " + format);
    }
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + out_path);
        f << text;
    }
}

json load_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open input file: " + path);
    json j;
    f >> j;
    return j;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"exact predictions, trace-formula bounds, constrained random-matrix "
                 "experiments and brute-force curve censuses over small finite fields"};
    app.require_subcommand(1);

    std::string out_path, format = "json";
    app.add_option("--out", out_path, "output path (default: stdout)")->capture_default_str();
    app.add_option("--format", format, "json | csv")->capture_default_str();

    // predict
    auto* predict = app.add_subcommand("predict", "lambda, exact moments and Poisson pmf table");
    long pq = 0;
    int pn = 6, pdigits = 50, pwindow = -1;
    predict->add_option("--q", pq, "prime power q")->required();
    predict->add_option("--n", pn, "max moment order")->capture_default_str();
    predict->add_option("--digits", pdigits, "pmf precision digits")->capture_default_str();
    predict->add_option("--window", pwindow, "pmf window upper end (default: auto)");

    // series
    auto* series = app.add_subcommand("series", "partition numbers, multiset counts, graded dimensions");
    int sn = 0, sdepth = 50;
    series->add_option("--n", sn, "number of markings")->capture_default_str();
    series->add_option("--depth", sdepth, "truncation depth")->capture_default_str();

    // trace
    auto* trace = app.add_subcommand("trace", "stable/unstable trace convergence table");
    long tq = 0;
    int tn = 0, tg = 2, tgmax = -1, tdepth = 400;
    trace->add_option("--q", tq, "prime power q")->required();
    trace->add_option("--n", tn, "number of markings")->capture_default_str();
    trace->add_option("--g", tg, "first genus")->capture_default_str();
    trace->add_option("--gmax", tgmax, "last genus (default: --g)");
    trace->add_option("--depth", tdepth, "target truncation depth")->capture_default_str();

    // rmt
    auto* rmtc = app.add_subcommand("rmt", "constrained unitary-symplectic experiment");
    rmt::ExperimentParams rp;
    std::string method = "matrix";
    bool no_constraints = false;
    rmtc->add_option("--g", rp.g, "half-rank g")->required();
    rmtc->add_option("--q", rp.q, "prime power q")->required();
    rmtc->add_option("--samples", rp.num_samples, "number of Haar samples")->required();
    rmtc->add_option("--seed", rp.seed, "RNG seed (required: runs must be reproducible)")->required();
    rmtc->add_option("--epsilon", rp.config.epsilon, "discreteness window")->capture_default_str();
    rmtc->add_option("--workers", rp.workers, "worker threads (does not affect results)")
        ->capture_default_str();
    rmtc->add_option("--method", method, "matrix | weyl")->capture_default_str();
    rmtc->add_option("--n-max", rp.n_max, "moment orders")->capture_default_str();
    rmtc->add_option("--max-index", rp.config.max_index, "largest extension index m")
        ->capture_default_str();
    rmtc->add_flag("--discreteness,!--no-discreteness", rp.config.discreteness,
                   "require N_k within epsilon of an integer");
    rmtc->add_flag("--positivity,!--no-positivity", rp.config.positivity, "require N_1 >= 0");
    rmtc->add_flag("--more-positivity,!--no-more-positivity", rp.config.more_positivity,
                   "require N_{n1 n2} >= N_{n1}");
    rmtc->add_flag("--no-constraints", no_constraints, "disable all constraints");

    // census
    auto* censusc = app.add_subcommand("census", "exhaustive weighted curve census");
    std::string kind_str, field_spec;
    long cq = -1;
    int cn_max = 4, cmax_ext = 4, cworkers = 1;
    censusc->add_option("--kind", kind_str, "genus1 | genus2")->required();
    censusc->add_option("--field", field_spec, "field spec p^k (or plain q)");
    censusc->add_option("--q", cq, "field size (alternative to --field)");
    censusc->add_option("--n-max", cn_max, "falling-moment orders")->capture_default_str();
    censusc->add_option("--max-ext", cmax_ext, "check extensions up to this degree")
        ->capture_default_str();
    censusc->add_option("--workers", cworkers, "worker threads (does not affect results)")
        ->capture_default_str();

    // report
    auto* reportc = app.add_subcommand("report", "census vs rmt vs prediction comparison");
    std::string census_path, rmt_path;
    long repq = 0;
    reportc->add_option("--census", census_path, "census JSON envelope")->required();
    reportc->add_option("--rmt", rmt_path, "rmt JSON envelope")->required();
    reportc->add_option("--q", repq, "prime power q")->required();

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        Timer timer;
        if (*predict) {
            json payload = predict_payload(pq, pn, pdigits, pwindow);
            json params{{"q", pq}, {"n_max", pn}, {"digits", pdigits}, {"window", payload["window"]}};
            emit(make_envelope("predict", params, payload, timer.seconds()), "predict", out_path, format);
        } else if (*series) {
            json payload = series_payload(sn, sdepth);
            json params{{"n", sn}, {"depth", sdepth}};
            emit(make_envelope("series", params, payload, timer.seconds()), "series", out_path, format);
        } else if (*trace) {
            if (tgmax < 0) tgmax = tg;
            json payload = trace_payload(tg, tgmax, tn, tq, tdepth);
            json params{{"q", tq}, {"n", tn}, {"g", tg}, {"gmax", tgmax}, {"depth", tdepth}};
            emit(make_envelope("trace", params, payload, timer.seconds()), "trace", out_path, format);
        } else if (*rmtc) {
            if (no_constraints) rp.config = rmt::ConstraintConfig::none();
            rp.method = rmt::parse_method(method);
            json payload = rmt_payload(rp);
            json params{{"g", rp.g},
                        {"q", rp.q},
                        {"samples", rp.num_samples},
                        {"seed", rp.seed},
                        {"epsilon", rp.config.epsilon},
                        {"method", method},
                        {"n_max", rp.n_max},
                        {"max_index", rp.config.max_index},
                        {"discreteness", rp.config.discreteness},
                        {"positivity", rp.config.positivity},
                        {"more_positivity", rp.config.more_positivity}};
            emit(make_envelope("rmt", params, payload, timer.seconds()), "rmt", out_path, format);
        } else if (*censusc) {
            if (field_spec.empty() && cq < 0)
                throw std::invalid_argument("census: provide --field or --q");
            auto [p, k] = field_spec.empty() ? parse_field_spec(std::to_string(cq))
                                             : parse_field_spec(field_spec);
            auto kind = census::parse_kind(kind_str);
            json payload = census_payload(kind, p, k, cn_max, cmax_ext, cworkers);
            json params{{"kind", kind_str},
                        {"p", p},
                        {"k", k},
                        {"q", payload["field"]["q"]},
                        {"modulus", payload["field"]["modulus"]},
                        {"n_max", cn_max},
                        {"max_ext", cmax_ext}};
            emit(make_envelope("census", params, payload, timer.seconds()), "census", out_path, format);
        } else if (*reportc) {
            json census_env = load_json_file(census_path);
            json rmt_env = load_json_file(rmt_path);
            json payload = report_payload(census_env, rmt_env, repq);
            json params{{"q", repq}, {"census_path", census_path}, {"rmt_path", rmt_path}};
            emit(make_envelope("report", params, payload, timer.seconds()), "report", out_path, format);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace curvestats::cli
