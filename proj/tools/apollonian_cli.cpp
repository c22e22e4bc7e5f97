#include "apollonian/census.hpp"
#include "apollonian/core.hpp"
#include "apollonian/geometry.hpp"
#include "apollonian/group.hpp"
#include "apollonian/roots.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace apollonian;

namespace {

// exit codes: 0 ok, 1 usage, 2 domain error, 3 unsupported request
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kDomain = 2;
constexpr int kUnsupported = 3;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw error("cannot open output file: " + out_path);
    os << text;
}

Quadruple parse_quadruple(const std::vector<std::int64_t>& v) {
    return Quadruple(v[0], v[1], v[2], v[3]);
}

json quadruple_json(const Quadruple& q) {
    return json::array({q[0], q[1], q[2], q[3]});
}

json word_json(const Word& w) {
    json out = json::array();
    for (int g : w.letters()) out.push_back(g);
    return out;
}

json root_record_json(const RootRecord& rec) {
    json j;
    j["root"] = quadruple_json(rec.root);
    j["param"] = {{"x", rec.param.x},
                  {"d1", rec.param.d1},
                  {"d2", rec.param.d2},
                  {"m", rec.param.m}};
    j["form"] = json::array({rec.form.a, rec.form.b, rec.form.c});
    return j;
}

double catalan_series() {
    long double s = 0.0L;
    for (long long n = 0; n < 20000000; ++n) {
        const long double t = 1.0L / ((2 * n + 1) * static_cast<long double>(2 * n + 1));
        s += (n % 2) ? -t : t;
    }
    return static_cast<double>(s);
}

int cmd_check(const std::vector<std::int64_t>& qv, const std::string& out) {
    const Quadruple q = parse_quadruple(qv);
    const std::int64_t defect = descartes_defect(q);
    json j;
    j["quadruple"] = quadruple_json(q);
    j["defect"] = defect;
    j["descartes"] = (defect == 0);
    if (!q.is_zero()) j["primitive"] = is_primitive(q);
    const auto m = metrics(q);
    j["metrics"] = {{"height_sq", m.height_sq},
                    {"height", m.height},
                    {"lsum", m.lsum},
                    {"supnorm", m.supnorm}};
    write_output(j.dump(2), out);
    return defect == 0 ? kOk : kDomain;
}

int cmd_reduce(const std::vector<std::int64_t>& qv, const std::string& out) {
    const auto r = reduce(parse_quadruple(qv));
    json j;
    j["root"] = quadruple_json(r.root.sorted());
    j["word"] = word_json(r.word);
    j["steps"] = r.steps;
    j["negated"] = r.negated;
    write_output(j.dump(2), out);
    return kOk;
}

int cmd_roots(std::int64_t n, std::int64_t range_lo, std::int64_t range_hi, bool list,
              bool verify, const std::string& format, const std::string& out) {
    if (range_hi >= range_lo && range_hi >= 0) {
        // table reproduction over a range of n
        if (format == "csv") {
            std::string csv = "n,count\n";
            for (std::int64_t k = range_lo; k <= range_hi; ++k)
                csv += std::to_string(k) + "," + std::to_string(count_roots(k)) + "\n";
            write_output(csv, out);
        } else {
            json rows = json::array();
            for (std::int64_t k = range_lo; k <= range_hi; ++k)
                rows.push_back({{"n", k}, {"count", count_roots(k)}});
            write_output(rows.dump(2), out);
        }
        return kOk;
    }
    json j;
    j["n"] = n;
    const auto count = count_roots(n);
    j["count"] = count;
    if (list || verify) {
        const auto records = enumerate_roots(n);
        if (verify) {
            const auto forms = enumerate_reduced_forms(std::max<std::int64_t>(n, 1));
            const bool ok = static_cast<std::int64_t>(records.size()) == count &&
                            (n == 0 || static_cast<std::int64_t>(forms.size()) == count);
            j["verified"] = ok;
            if (!ok) {
                j["enumerated"] = records.size();
                j["reduced_forms"] = forms.size();
                write_output(j.dump(2), out);
                return kDomain;
            }
        }
        if (list) {
            json arr = json::array();
            for (const auto& rec : records) arr.push_back(root_record_json(rec));
            j["roots"] = arr;
        }
    }
    write_output(j.dump(2), out);
    return kOk;
}

int cmd_census(const std::vector<std::int64_t>& qv, std::int64_t T, const std::string& mode,
               std::int64_t modulus, bool missing, int threads, const std::string& save_path,
               const std::string& resume_path, std::uint64_t budget, const std::string& out) {
    CensusOptions opts;
    opts.mode = (mode == "multiplicity") ? CensusMode::multiplicity : CensusMode::values;
    opts.threads = threads;
    if (opts.mode == CensusMode::multiplicity && modulus > 0) opts.residue_modulus = modulus;

    std::optional<CensusRun> run;
    if (!resume_path.empty())
        run.emplace(CensusRun::load(resume_path));
    else
        run.emplace(parse_quadruple(qv), T, opts);

    const bool done = run->run(budget);
    if (!save_path.empty()) run->save(save_path);
    if (!done) {
        std::cerr << "census paused; state saved\n";
        json j;
        j["finished"] = false;
        j["circles_traversed"] = run->snapshot().circles_counted;
        write_output(j.dump(2), out);
        return kOk;
    }

    const Census c = std::move(*run).take();
    json j;
    j["root"] = quadruple_json(c.root);
    j["bound"] = c.bound;
    j["mode"] = (c.mode == CensusMode::values) ? "values" : "multiplicity";
    if (c.trivial) std::cerr << "warning: bound is below the largest root curvature\n";
    j["circles_traversed"] = c.circles_counted;
    if (c.mode == CensusMode::values) {
        j["present_count"] = c.present.count();
        j["nonpositive_root_entries"] = c.nonpositive_entries;
        if (modulus > 0) {
            json per_class = json::object();
            std::vector<std::int64_t> counts(static_cast<std::size_t>(modulus), 0);
            for (std::int64_t v = 1; v <= c.bound; ++v)
                if (c.present.test(v)) ++counts[static_cast<std::size_t>(v % modulus)];
            for (std::int64_t r = 0; r < modulus; ++r)
                per_class[std::to_string(r)] = counts[static_cast<std::size_t>(r)];
            j["present_per_class"] = per_class;
            if (missing) {
                const auto rep = missing_values(c, modulus);
                j["allowed_classes"] = rep.allowed_classes;
                json reports = json::array();
                for (const auto& [cls, vals] : rep.missing)
                    reports.push_back(
                        {{"modulus", rep.modulus}, {"class", cls}, {"missing", vals}});
                j["missing"] = reports;
            }
        }
    } else {
        j["circles"] = c.checkpoint_counts.empty() ? 0 : c.checkpoint_counts.back();
        json cps = json::array();
        for (std::size_t i = 0; i < c.checkpoints.size(); ++i)
            cps.push_back(json::array({c.checkpoints[i], c.checkpoint_counts[i]}));
        j["checkpoints"] = cps;
        if (c.residue_modulus > 0) {
            json per_class = json::object();
            for (std::int64_t r = 0; r < c.residue_modulus; ++r)
                per_class[std::to_string(r)] = c.residue_counts[static_cast<std::size_t>(r)];
            j["circles_per_class"] = per_class;
        }
        if (c.bound >= 10000) j["growth_exponent"] = growth_exponent(c);
    }
    write_output(j.dump(2), out);
    return kOk;
}

int cmd_orbits(std::int64_t m, bool all, const std::string& out) {
    const auto table = orbit_partition(m, all ? OrbitFilter::all : OrbitFilter::primitive_classes);
    json j;
    j["modulus"] = table.modulus;
    j["orbit_count"] = table.orbits.size();
    json orbits = json::array();
    for (const auto& orb : table.orbits) {
        json patterns = json::array();
        for (const auto& p : orb.patterns)
            patterns.push_back(json::array({p[0], p[1], p[2], p[3]}));
        orbits.push_back({{"patterns", patterns},
                          {"residues", std::vector<std::int64_t>(orb.residues.begin(),
                                                                 orb.residues.end())}});
    }
    j["orbits"] = orbits;
    write_output(j.dump(2), out);
    return kOk;
}

int cmd_witness(const std::vector<std::int64_t>& qv, std::int64_t m, std::int64_t cap,
                const std::string& out) {
    const auto rep = residue_cover_witness(parse_quadruple(qv), m, cap);
    json j;
    j["modulus"] = rep.modulus;
    j["cap"] = rep.cap;
    j["complete"] = rep.complete;
    json smallest = json::object();
    for (std::int64_t r = 0; r < m; ++r) {
        const auto v = rep.smallest[static_cast<std::size_t>(r)];
        smallest[std::to_string(r)] = (v < 0) ? json() : json(v);
    }
    j["smallest"] = smallest;
    write_output(j.dump(2), out);
    return kOk;
}

int cmd_heights(double T, bool primitive, const std::string& out) {
    const auto count = count_quadruples(T, primitive);
    json j;
    j["T"] = T;
    j["primitive"] = primitive;
    j["count"] = count;
    if (T > 0) {
        const double g = catalan_series();
        const double pi = 3.14159265358979323846;
        j["count_over_T2"] = static_cast<double>(count) / (T * T);
        j["reference_constant"] = primitive ? 3.0 / (2.0 * g) : pi * pi / (4.0 * g);
    }
    write_output(j.dump(2), out);
    return kOk;
}

int cmd_jsr(const std::string& out) {
    const auto s = joint_spectral_radius();
    json j;
    j["charpoly"] = s.charpoly;
    j["theta"] = s.theta;
    j["jsr"] = s.jsr;
    write_output(j.dump(2), out);
    return kOk;
}

int cmd_growth(const std::vector<std::int64_t>& qv, const std::string& mode, int length,
               int samples, std::uint64_t seed, const std::string& out) {
    const Quadruple v = parse_quadruple(qv);
    json j;
    j["root"] = quadruple_json(v);
    j["length"] = length;
    j["mode"] = mode;
    if (mode == "median") {
        const auto r = median_growth_experiment(v, length, samples, seed);
        j["samples"] = samples;
        j["seed"] = seed;
        j["median"] = r.median;
        j["log_rate"] = r.log_rate;
        j["status"] = "experimental";
        // conjectured reference rate log 3 / alpha
        j["reference_log3_over_alpha"] = std::log(3.0) / 1.30568673;
    } else if (mode == "max" || mode == "min") {
        const auto r =
            extremal_growth(v, length, mode == "max" ? GrowthMode::max : GrowthMode::min);
        j["value"] = r.value;
        j["word"] = word_json(r.word);
    } else {
        throw validation_error("growth mode must be max, min or median");
    }
    write_output(j.dump(2), out);
    return kOk;
}

int cmd_render(const std::vector<std::int64_t>& qv, std::int64_t T, const RenderOptions& opts,
               const std::string& out) {
    write_output(render_svg(parse_quadruple(qv), T, opts), out);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integral Apollonian circle packings: quadruple algebra, root counting, "
                 "curvature censuses, growth words and SVG rendering"};
    app.require_subcommand(1);

    std::vector<std::int64_t> qv;
    std::string out_path;
    std::string format = "json";
    std::int64_t T = 0, modulus = 0, cap = 1000000, n = -1;
    std::int64_t range_lo = 0, range_hi = -1;
    std::string mode = "values";
    bool missing = false, list = false, verify = false, primitive = false, all = false;
    int threads = 0, length = 0, samples = 10000;
    std::uint64_t seed = 1, budget = 0;
    double height = 0.0;
    std::string save_path, resume_path;
    RenderOptions render_opts;

    const auto add_quadruple = [&](CLI::App* cmd, bool required = true) {
        auto* opt =
            cmd->add_option("quadruple", qv, "four curvatures (negatives need a -- separator)");
        opt->expected(4);
        if (required) opt->required();
    };
    const auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write the result to a file instead of stdout");
    };

    auto* c_check = app.add_subcommand("check", "validate a Descartes quadruple");
    add_quadruple(c_check);
    add_out(c_check);

    auto* c_reduce = app.add_subcommand("reduce", "walk a quadruple down to its root");
    add_quadruple(c_reduce);
    add_out(c_reduce);

    auto* c_roots = app.add_subcommand("roots", "count or list root quadruples with entry -n");
    c_roots->add_option("-n", n, "smallest entry is -n");
    std::string range_spec;
    c_roots->add_option("--range", range_spec, "count over a range of n, as lo:hi");
    c_roots->add_flag("--list", list, "list full records");
    c_roots->add_flag("--count", "count only (default)");
    c_roots->add_flag("--verify", verify, "cross-check the enumeration against the formula");
    c_roots->add_option("--format", format, "json or csv (csv applies to --range)");
    add_out(c_roots);

    auto* c_census = app.add_subcommand("census", "enumerate curvatures of a packing up to T");
    add_quadruple(c_census, false);
    c_census->add_option("-T,--bound", T, "largest curvature to include");
    c_census->add_option("--mode", mode, "values or multiplicity");
    c_census->add_option("--mod", modulus, "analyze residues modulo m");
    c_census->add_flag("--missing", missing, "list missing integers per allowed class");
    c_census->add_option("--threads", threads, "worker count (default: machine parallelism)");
    c_census->add_option("--checkpoint", save_path, "save the run state to this file");
    c_census->add_option("--resume", resume_path, "resume from a checkpoint file");
    c_census->add_option("--budget", budget, "pause after roughly this many circles");
    add_out(c_census);

    auto* c_orbits = app.add_subcommand("orbits", "generator orbits of residue quadruples mod m");
    c_orbits->add_option("-m,--mod", modulus, "modulus")->required();
    c_orbits->add_flag("--all", all, "include imprimitive residue classes");
    add_out(c_orbits);

    auto* c_witness =
        app.add_subcommand("witness", "smallest curvature per residue class mod m");
    add_quadruple(c_witness);
    c_witness->add_option("-m,--mod", modulus, "modulus")->required();
    c_witness->add_option("--cap", cap, "search circles up to this curvature");
    add_out(c_witness);

    auto* c_heights =
        app.add_subcommand("heights", "count Descartes quadruples of height at most T");
    c_heights->add_option("-T,--bound", height, "Euclidean height bound")->required();
    c_heights->add_flag("--primitive", primitive, "count primitive quadruples only");
    add_out(c_heights);

    auto* c_jsr = app.add_subcommand("jsr", "extremal growth polynomial and rates");
    add_out(c_jsr);

    auto* c_growth = app.add_subcommand("growth", "extremal or median growth over words");
    add_quadruple(c_growth);
    c_growth->add_option("-n,--length", length, "word length")->required();
    c_growth->add_option("--mode", mode, "max, min or median")->required();
    c_growth->add_option("--samples", samples, "sample count for median mode");
    c_growth->add_option("--seed", seed, "random seed for median mode");
    add_out(c_growth);

    auto* c_render = app.add_subcommand("render", "draw the packing as SVG");
    add_quadruple(c_render);
    c_render->add_option("-T,--bound", T, "largest curvature to draw")->required();
    c_render->add_option("--size", render_opts.size_px, "viewport edge in pixels");
    c_render->add_option("--stroke", render_opts.stroke_px, "stroke width in pixels");
    c_render->add_option("--min-radius", render_opts.min_radius_px,
                         "skip circles smaller than this many pixels");
    c_render->add_flag("--labels", render_opts.labels, "label large circles with curvatures");
    c_render->add_option("--label-scale", render_opts.label_scale,
                         "label font size as a fraction of the circle radius");
    add_out(c_render);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (c_check->parsed()) return cmd_check(qv, out_path);
        if (c_reduce->parsed()) return cmd_reduce(qv, out_path);
        if (c_roots->parsed()) {
            if (!range_spec.empty()) {
                const auto colon = range_spec.find(':');
                if (colon == std::string::npos)
                    throw validation_error("--range expects lo:hi");
                range_lo = std::stoll(range_spec.substr(0, colon));
                range_hi = std::stoll(range_spec.substr(colon + 1));
            }
            if (n < 0 && range_spec.empty())
                throw validation_error("roots needs -n or --range");
            return cmd_roots(n, range_lo, range_hi, list, verify, format, out_path);
        }
        if (c_census->parsed()) {
            if (qv.empty() && resume_path.empty())
                throw validation_error("census needs a quadruple or --resume");
            if (qv.empty()) qv = {0, 0, 0, 0};  // placeholder; --resume carries the real root
            if (T <= 0 && resume_path.empty())
                throw validation_error("census needs a positive bound -T");
            return cmd_census(qv, T, mode, modulus, missing, threads, save_path, resume_path,
                              budget, out_path);
        }
        if (c_orbits->parsed()) return cmd_orbits(modulus, all, out_path);
        if (c_witness->parsed()) return cmd_witness(qv, modulus, cap, out_path);
        if (c_heights->parsed()) return cmd_heights(height, primitive, out_path);
        if (c_jsr->parsed()) return cmd_jsr(out_path);
        if (c_growth->parsed()) return cmd_growth(qv, mode, length, samples, seed, out_path);
        if (c_render->parsed()) return cmd_render(qv, T, render_opts, out_path);
    } catch (const unsupported_error& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kUnsupported;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const arithmetic_range_error& e) {
        std::cerr << "arithmetic range: " << e.what() << "\n";
        return kDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    }
    return kUsage;
}
