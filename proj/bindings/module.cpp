#include "apollonian/census.hpp"
#include "apollonian/core.hpp"
#include "apollonian/geometry.hpp"
#include "apollonian/group.hpp"
#include "apollonian/roots.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <tuple>
#include <vector>

namespace py = pybind11;
using namespace apollonian;

namespace {

Quadruple as_quadruple(const std::array<std::int64_t, 4>& v) {
    return Quadruple(v[0], v[1], v[2], v[3]);
}

std::array<std::int64_t, 4> as_array(const Quadruple& q) {
    return q.k;
}

Word as_word(const std::vector<int>& letters) {
    return Word::from_letters(letters);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact integer machinery of integral Apollonian circle packings";

    py::register_exception<arithmetic_range_error>(m, "ArithmeticRangeError", PyExc_OverflowError);
    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<unsupported_error>(m, "UnsupportedError", PyExc_RuntimeError);

    // core
    m.def("descartes_defect",
          [](const std::array<std::int64_t, 4>& q) { return descartes_defect(as_quadruple(q)); },
          py::arg("quadruple"),
          "Q_D(q), zero exactly on Descartes quadruples");
    m.def("is_descartes",
          [](const std::array<std::int64_t, 4>& q) { return is_descartes(as_quadruple(q)); },
          py::arg("quadruple"));
    m.def("solve_fourth",
          [](std::int64_t a, std::int64_t b, std::int64_t c) {
              const auto s = solve_fourth(a, b, c);
              py::dict d;
              d["linear"] = s.linear;
              d["radicand"] = s.radicand;
              d["integral"] = s.integral();
              if (s.integral()) d["roots"] = s.roots();
              return d;
          },
          py::arg("a"), py::arg("b"), py::arg("c"),
          "both curvatures tangent to three mutually tangent circles");
    m.def("to_lorentz",
          [](const std::array<std::int64_t, 4>& q) { return to_lorentz(as_quadruple(q)).k; },
          py::arg("quadruple"));
    m.def("is_primitive",
          [](const std::array<std::int64_t, 4>& q) { return is_primitive(as_quadruple(q)); },
          py::arg("quadruple"));
    m.def("metrics",
          [](const std::array<std::int64_t, 4>& q) {
              const auto mt = metrics(as_quadruple(q));
              py::dict d;
              d["height_sq"] = mt.height_sq;
              d["height"] = mt.height;
              d["lsum"] = mt.lsum;
              d["supnorm"] = mt.supnorm;
              return d;
          },
          py::arg("quadruple"));

    // group
    m.def("apply_generator",
          [](const std::array<std::int64_t, 4>& q, int g) {
              return as_array(apply_generator(as_quadruple(q), g));
          },
          py::arg("quadruple"), py::arg("generator"));
    m.def("apply_word",
          [](const std::array<std::int64_t, 4>& q, const std::vector<int>& w) {
              return as_array(apply_word(as_quadruple(q), as_word(w)));
          },
          py::arg("quadruple"), py::arg("word"),
          "apply a reduced word, rightmost letter first");
    m.def("word_to_matrix",
          [](const std::vector<int>& w) {
              const auto g = word_to_matrix(as_word(w));
              std::vector<std::vector<py::int_>> rows;
              for (int r = 0; r < 4; ++r) {
                  std::vector<py::int_> row;
                  for (int c = 0; c < 4; ++c)
                      row.push_back(py::int_(py::str(g.entry(r, c).str())));
                  rows.push_back(std::move(row));
              }
              return rows;
          },
          py::arg("word"));
    m.def("is_root",
          [](const std::array<std::int64_t, 4>& q) { return is_root(as_quadruple(q)); },
          py::arg("quadruple"));
    m.def("reduce",
          [](const std::array<std::int64_t, 4>& q) {
              const auto r = reduce(as_quadruple(q));
              py::dict d;
              d["root"] = as_array(r.root.sorted());
              d["root_state"] = as_array(r.root);  // positional; word round-trips from here
              d["word"] = r.word.letters();
              d["steps"] = r.steps;
              d["negated"] = r.negated;
              return d;
          },
          py::arg("quadruple"), "walk a Descartes quadruple down to its root");
    m.def("max_word", [](std::int64_t n) { return max_word(n).letters(); }, py::arg("n"));
    m.def("extremal_growth",
          [](const std::array<std::int64_t, 4>& q, int length, const std::string& mode) {
              const auto r = extremal_growth(as_quadruple(q), length,
                                             mode == "max" ? GrowthMode::max : GrowthMode::min);
              return std::make_tuple(r.value, r.word.letters());
          },
          py::arg("root"), py::arg("length"), py::arg("mode"));
    m.def("joint_spectral_radius", [] {
        const auto s = joint_spectral_radius();
        py::dict d;
        d["charpoly"] = s.charpoly;
        d["theta"] = s.theta;
        d["jsr"] = s.jsr;
        return d;
    });
    m.def("median_growth_experiment",
          [](const std::array<std::int64_t, 4>& q, int length, int samples, std::uint64_t seed) {
              const auto r = median_growth_experiment(as_quadruple(q), length, samples, seed);
              return std::make_tuple(r.median, r.log_rate);
          },
          py::arg("root"), py::arg("length"), py::arg("samples"), py::arg("seed"));

    // roots
    m.def("enumerate_roots",
          [](std::int64_t n) {
              py::list out;
              for (const auto& rec : enumerate_roots(n)) {
                  py::dict d;
                  d["root"] = as_array(rec.root);
                  d["param"] = std::make_tuple(rec.param.x, rec.param.d1, rec.param.d2,
                                               rec.param.m);
                  d["form"] = std::make_tuple(rec.form.a, rec.form.b, rec.form.c);
                  out.append(d);
              }
              return out;
          },
          py::arg("n"));
    m.def("count_roots", &count_roots, py::arg("n"));
    m.def("class_number", &class_number, py::arg("n"));
    m.def("ambiguous_count", &ambiguous_count, py::arg("n"));
    m.def("to_binary_form",
          [](const std::array<std::int64_t, 4>& q) {
              const auto f = to_binary_form(as_quadruple(q));
              return std::make_tuple(f.a, f.b, f.c);
          },
          py::arg("root"));
    m.def("enumerate_reduced_forms",
          [](std::int64_t n) {
              std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> out;
              for (const auto& f : enumerate_reduced_forms(n)) out.emplace_back(f.a, f.b, f.c);
              return out;
          },
          py::arg("n"));

    // census
    py::class_<Census>(m, "Census")
        .def_property_readonly("root", [](const Census& c) { return as_array(c.root); })
        .def_property_readonly("bound", [](const Census& c) { return c.bound; })
        .def_property_readonly("mode",
                               [](const Census& c) {
                                   return c.mode == CensusMode::values ? "values"
                                                                       : "multiplicity";
                               })
        .def_property_readonly("circles_counted",
                               [](const Census& c) { return c.circles_counted; })
        .def_property_readonly("trivial", [](const Census& c) { return c.trivial; })
        .def("present", [](const Census& c, std::int64_t v) { return c.present.test(v); },
             py::arg("value"))
        .def("present_count", [](const Census& c) { return c.present.count(); })
        .def_property_readonly("checkpoints",
                               [](const Census& c) {
                                   std::vector<std::pair<std::int64_t, std::uint64_t>> out;
                                   for (std::size_t i = 0; i < c.checkpoints.size(); ++i)
                                       out.emplace_back(c.checkpoints[i],
                                                        c.checkpoint_counts[i]);
                                   return out;
                               });
    m.def("census",
          [](const std::array<std::int64_t, 4>& root, std::int64_t T, const std::string& mode,
             int threads) {
              CensusOptions opts;
              opts.mode = mode == "multiplicity" ? CensusMode::multiplicity : CensusMode::values;
              opts.threads = threads;
              return census(as_quadruple(root), T, opts);
          },
          py::arg("root"), py::arg("bound"), py::arg("mode") = "values", py::arg("threads") = 0,
          "exact curvature inventory of a packing up to the bound");
    m.def("missing_values",
          [](const Census& c, std::int64_t modulus) {
              const auto rep = missing_values(c, modulus);
              py::dict d;
              d["modulus"] = rep.modulus;
              d["allowed_classes"] = rep.allowed_classes;
              py::dict per_class;
              for (const auto& [cls, vals] : rep.missing) per_class[py::int_(cls)] = vals;
              d["missing"] = per_class;
              return d;
          },
          py::arg("census"), py::arg("modulus"));
    m.def("allowed_classes",
          [](const std::array<std::int64_t, 4>& root, std::int64_t modulus) {
              return allowed_classes(as_quadruple(root), modulus);
          },
          py::arg("root"), py::arg("modulus"));
    m.def("orbit_partition",
          [](std::int64_t modulus, bool primitive_only) {
              const auto table = orbit_partition(
                  modulus, primitive_only ? OrbitFilter::primitive_classes : OrbitFilter::all);
              py::list orbits;
              for (const auto& orb : table.orbits) {
                  py::dict d;
                  d["patterns"] = orb.patterns;
                  d["residues"] = orb.residues;
                  orbits.append(d);
              }
              return orbits;
          },
          py::arg("modulus"), py::arg("primitive_only") = true);
    m.def("residue_cover_witness",
          [](const std::array<std::int64_t, 4>& root, std::int64_t modulus, std::int64_t cap) {
              const auto rep = residue_cover_witness(as_quadruple(root), modulus, cap);
              py::dict d;
              d["modulus"] = rep.modulus;
              d["cap"] = rep.cap;
              d["complete"] = rep.complete;
              d["smallest"] = rep.smallest;
              return d;
          },
          py::arg("root"), py::arg("modulus"), py::arg("cap"));
    m.def("r3_square", &r3_square, py::arg("m"),
          "representations of m^2 as an ordered sum of three squares");
    m.def("r3_square_primitive", &r3_square_primitive, py::arg("m"));
    m.def("count_quadruples", &count_quadruples, py::arg("height"), py::arg("primitive") = false);
    m.def("growth_exponent", &growth_exponent, py::arg("census"));

    // geometry
    m.def("packing_circles",
          [](const std::array<std::int64_t, 4>& root, std::int64_t T) {
              std::vector<std::tuple<std::int64_t, double, double, bool>> out;
              for (const auto& p : packing_circles(as_quadruple(root), T))
                  out.emplace_back(p.curvature, static_cast<double>(p.wx),
                                   static_cast<double>(p.wy), p.integral());
              return out;
          },
          py::arg("root"), py::arg("bound"),
          "circles as (curvature, k*x, k*y, weighted center is integral)");
    m.def("render_svg",
          [](const std::array<std::int64_t, 4>& root, std::int64_t T, bool labels) {
              RenderOptions opts;
              opts.labels = labels;
              return render_svg(as_quadruple(root), T, opts);
          },
          py::arg("root"), py::arg("bound"), py::arg("labels") = false);
}
