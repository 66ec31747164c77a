// Python bindings for the density-classification toolkit: genome handling,
// compiled gate networks, lattices, CA runs, the evolutionary search and the
// analysis suite.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "sasoca/analysis.hpp"
#include "sasoca/ca.hpp"
#include "sasoca/config.hpp"
#include "sasoca/errors.hpp"
#include "sasoca/evolve.hpp"
#include "sasoca/fsm.hpp"
#include "sasoca/genome.hpp"
#include "sasoca/render.hpp"
#include "sasoca/rng.hpp"
#include "sasoca/version.hpp"

namespace py = pybind11;
using namespace sasoca;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Evolving finite-state update machines for density classification";
  m.attr("__version__") = kVersion;
  m.attr("ordering_convention") = kOrderingConvention;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<TieError>(m, "TieError", PyExc_ValueError);

  // ---- randomness ----------------------------------------------------------
  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("u64", &Rng::u64)
      .def("uniform01", &Rng::uniform01)
      .def("uniform_int", &Rng::uniform_int, py::arg("bound"));
  m.def(
      "derive_seed",
      [](std::uint64_t seed, std::uint64_t a) { return derive_seed(seed, a); },
      py::arg("seed"), py::arg("a"));
  m.def(
      "derive_seed",
      [](std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
        return derive_seed(seed, a, b);
      },
      py::arg("seed"), py::arg("a"), py::arg("b"));
  m.def(
      "derive_seed",
      [](std::uint64_t seed, std::uint64_t a, std::uint64_t b,
         std::uint64_t c) { return derive_seed(seed, a, b, c); },
      py::arg("seed"), py::arg("a"), py::arg("b"), py::arg("c"));
  m.attr("STREAM_INIT") = static_cast<std::uint64_t>(kStreamInit);
  m.attr("STREAM_IC") = static_cast<std::uint64_t>(kStreamIc);
  m.attr("STREAM_SELECT") = static_cast<std::uint64_t>(kStreamSelect);
  m.attr("STREAM_MUTATE") = static_cast<std::uint64_t>(kStreamMutate);
  m.attr("STREAM_EVAL") = static_cast<std::uint64_t>(kStreamEval);
  m.attr("STREAM_DENSITY") = static_cast<std::uint64_t>(kStreamDensity);

  // ---- genomes -------------------------------------------------------------
  py::class_<Genome>(m, "Genome")
      .def(py::init([](std::vector<std::uint8_t> codons) {
             return Genome{std::move(codons)};
           }),
           py::arg("codons"))
      .def_readwrite("codons", &Genome::codons)
      .def("__len__", &Genome::size);
  py::class_<GeneSpan>(m, "GeneSpan")
      .def_readonly("start_index", &GeneSpan::start_index)
      .def_readonly("n_in", &GeneSpan::n_in)
      .def_readonly("n_out", &GeneSpan::n_out)
      .def_readonly("input_ids", &GeneSpan::input_ids)
      .def_readonly("output_ids", &GeneSpan::output_ids)
      .def_readonly("table", &GeneSpan::table);
  py::class_<MutationConfig>(m, "MutationConfig")
      .def(py::init<>())
      .def_readwrite("point_rate", &MutationConfig::point_rate)
      .def_readwrite("indel_rate", &MutationConfig::indel_rate)
      .def_readwrite("indel_size_min", &MutationConfig::indel_size_min)
      .def_readwrite("indel_size_max", &MutationConfig::indel_size_max);

  m.def("random_genome", &random_genome, py::arg("length"),
        py::arg("n_seed_genes"), py::arg("total_states"), py::arg("rng"));
  m.def("scan_genes", &scan_genes, py::arg("genome"), py::arg("total_states"));
  m.def("point_mutate", &point_mutate, py::arg("genome"), py::arg("rate"),
        py::arg("rng"));
  m.def("indel_mutate", &indel_mutate, py::arg("genome"), py::arg("config"),
        py::arg("rng"));
  m.def("write_genome_file", &write_genome_file, py::arg("path"),
        py::arg("genome"), py::arg("total_states"));
  m.def("read_genome_file", &read_genome_file, py::arg("path"));

  // ---- gate networks ---------------------------------------------------------
  py::class_<StateLayout>(m, "StateLayout")
      .def_static("for_inputs", &StateLayout::for_inputs, py::arg("n_inputs"))
      .def_readonly("n_inputs", &StateLayout::n_inputs)
      .def_property_readonly("total", &StateLayout::total)
      .def_property_readonly("output_index", &StateLayout::output_index)
      .def_property_readonly("hidden_begin", &StateLayout::hidden_begin);
  py::class_<LogicGate>(m, "LogicGate")
      .def(py::init([](std::vector<int> ins, std::vector<int> outs,
                       std::vector<std::uint8_t> table) {
             return LogicGate{std::move(ins), std::move(outs), std::move(table)};
           }),
           py::arg("input_ids"), py::arg("output_ids"), py::arg("table"))
      .def_readonly("input_ids", &LogicGate::input_ids)
      .def_readonly("output_ids", &LogicGate::output_ids)
      .def_readonly("table", &LogicGate::table);
  py::class_<KnockoutMask>(m, "KnockoutMask")
      .def(py::init<>())
      .def_readwrite("hold_hidden_zero", &KnockoutMask::hold_hidden_zero)
      .def_readwrite("hold_neighbor_inputs_zero",
                     &KnockoutMask::hold_neighbor_inputs_zero)
      .def_readwrite("self_input_index", &KnockoutMask::self_input_index);
  py::class_<StepResult>(m, "StepResult")
      .def_readonly("output", &StepResult::output)
      .def_property_readonly("hidden", [](const StepResult& r) {
        return std::vector<std::uint8_t>(r.hidden.begin(), r.hidden.end());
      });
  py::class_<Fsm>(m, "Fsm")
      .def(py::init<StateLayout, std::vector<LogicGate>>(), py::arg("layout"),
           py::arg("gates"))
      .def_property_readonly("layout", &Fsm::layout)
      .def_property_readonly("gates", &Fsm::gates)
      .def_property_readonly("reads_hidden", &Fsm::reads_hidden)
      .def("step_word", &Fsm::step_word, py::arg("state"))
      .def("step", &Fsm::step, py::arg("input_bits"), py::arg("hidden_bits"),
           py::arg("mask") = KnockoutMask{});
  m.def("compile_genome", &compile, py::arg("genome"), py::arg("layout"));
  m.def("rule_table_fsm", &rule_table_fsm, py::arg("table"), py::arg("k"),
        py::arg("layout"));

  // ---- lattices and CA runs --------------------------------------------------
  py::class_<Lattice>(m, "Lattice")
      .def_readonly("dims", &Lattice::dims)
      .def_readonly("radius", &Lattice::radius)
      .def_readonly("cells", &Lattice::cells)
      .def_readonly("nbhd_size", &Lattice::nbhd_size)
      .def_property_readonly("self_offset_index", &Lattice::self_offset_index)
      .def("row", [](const Lattice& lat, int cell) {
        if (cell < 0 || cell >= lat.cells) {
          throw py::index_error("cell out of range");
        }
        return std::vector<int>(lat.row(cell), lat.row(cell) + lat.nbhd_size);
      });
  m.def("make_lattice", &make_lattice, py::arg("dims"), py::arg("radius"));
  m.def("canonical_lattice", &canonical_lattice, py::arg("topology"));
  m.def("scaled_lattice", &scaled_lattice, py::arg("base"), py::arg("s"));

  py::class_<Configuration>(m, "Configuration")
      .def(py::init([](std::vector<std::uint8_t> bits, std::vector<int> dims) {
             return Configuration{std::move(bits), std::move(dims)};
           }),
           py::arg("bits"), py::arg("dims"))
      .def_readwrite("bits", &Configuration::bits)
      .def_readonly("dims", &Configuration::dims);
  py::enum_<IcScheme>(m, "IcScheme")
      .value("UNIFORM_DENSITY_FULL", IcScheme::UniformDensityFull)
      .value("UNIFORM_DENSITY_LOW", IcScheme::UniformDensityLow)
      .value("UNIFORM_DENSITY_HIGH", IcScheme::UniformDensityHigh)
      .value("BINOMIAL", IcScheme::Binomial);
  m.def("gen_ic", &gen_ic, py::arg("lattice"), py::arg("scheme"), py::arg("rng"));
  m.def("ic_from_density", &ic_from_density, py::arg("lattice"), py::arg("rho"),
        py::arg("rng"));
  m.def("majority", &majority, py::arg("configuration"));

  py::enum_<Verdict>(m, "Verdict")
      .value("ALL_ZEROS", Verdict::AllZeros)
      .value("ALL_ONES", Verdict::AllOnes)
      .value("UNSETTLED", Verdict::Unsettled);
  py::class_<CaOutcome>(m, "CaOutcome")
      .def_readonly("final", &CaOutcome::final)
      .def_readonly("steps_run", &CaOutcome::steps_run)
      .def_readonly("verdict", &CaOutcome::verdict)
      .def_readonly("correct", &CaOutcome::correct);
  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("frames", &Trajectory::frames);
  m.def(
      "run_ic",
      [](const Fsm& f, const Lattice& lat, const Configuration& ic,
         const KnockoutMask& mask, bool record) -> py::tuple {
        if (!record) {
          return py::make_tuple(run_ic(f, lat, ic, mask), py::none());
        }
        Trajectory traj;
        CaOutcome out = run_ic(f, lat, ic, mask, &traj);
        return py::make_tuple(out, traj);
      },
      py::arg("fsm"), py::arg("lattice"), py::arg("ic"),
      py::arg("mask") = KnockoutMask{}, py::arg("record") = false,
      "Runs M = 2 * cells synchronous steps; returns (outcome, trajectory or "
      "None). record=True always executes all M steps and keeps every frame.");
  m.def("ascii_render", &ascii_render, py::arg("trajectory"));

  // ---- evolution -------------------------------------------------------------
  py::class_<EaConfig>(m, "EaConfig")
      .def(py::init<>())
      .def_readwrite("population_size", &EaConfig::population_size)
      .def_readwrite("replacement_rate", &EaConfig::replacement_rate)
      .def_readwrite("samples_per_eval", &EaConfig::samples_per_eval)
      .def_readwrite("updates", &EaConfig::updates)
      .def_readwrite("mutation", &EaConfig::mutation)
      .def_readwrite("dims", &EaConfig::dims)
      .def_readwrite("radius", &EaConfig::radius)
      .def_readwrite("ic_scheme", &EaConfig::ic_scheme)
      .def_readwrite("seed", &EaConfig::seed)
      .def_readwrite("initial_genome_length", &EaConfig::initial_genome_length)
      .def_readwrite("initial_genes", &EaConfig::initial_genes)
      .def_readwrite("fitness_window", &EaConfig::fitness_window)
      .def_readwrite("checkpoint_every", &EaConfig::checkpoint_every)
      .def_readwrite("jobs", &EaConfig::jobs);
  py::class_<Individual>(m, "Individual")
      .def_readonly("genome", &Individual::genome)
      .def_readonly("raw_fitness", &Individual::raw_fitness)
      .def_readonly("lineage_window", &Individual::lineage_window)
      .def_readonly("id", &Individual::id)
      .def_readonly("parent_id", &Individual::parent_id)
      .def_property_readonly("effective_fitness", &Individual::effective_fitness);
  py::class_<UpdateRecord>(m, "UpdateRecord")
      .def_readonly("update", &UpdateRecord::update)
      .def_readonly("max_eff_fitness", &UpdateRecord::max_eff_fitness)
      .def_readonly("mean_eff_fitness", &UpdateRecord::mean_eff_fitness)
      .def_readonly("max_raw_fitness", &UpdateRecord::max_raw_fitness)
      .def_readonly("mean_genome_len", &UpdateRecord::mean_genome_len);
  py::class_<RunLog>(m, "RunLog")
      .def_readonly("records", &RunLog::records)
      .def_readonly("dominant", &RunLog::dominant);
  m.def("evaluate", &evaluate, py::arg("fsm"), py::arg("lattice"),
        py::arg("scheme"), py::arg("n_samples"), py::arg("rng"));
  m.def("test_dominant", &test_dominant, py::arg("fsm"), py::arg("lattice"),
        py::arg("n"), py::arg("scheme"), py::arg("seed"), py::arg("jobs") = 1);
  m.def("run_ea", &run_ea, py::arg("config"),
        py::arg("checkpoint_dir") = std::filesystem::path{},
        py::call_guard<py::gil_scoped_release>());
  m.def("runlog_csv", &runlog_csv, py::arg("records"));

  // ---- analyses ----------------------------------------------------------------
  py::enum_<DensityMode>(m, "DensityMode")
      .value("EXACT", DensityMode::Exact)
      .value("SAMPLED", DensityMode::Sampled);
  py::class_<RuleDensityReport>(m, "RuleDensityReport")
      .def_readonly("mode", &RuleDensityReport::mode)
      .def_readonly("total_state_bits", &RuleDensityReport::total_state_bits)
      .def_readonly("states_evaluated", &RuleDensityReport::states_evaluated)
      .def_readonly("density", &RuleDensityReport::density);
  py::class_<KnockoutReport>(m, "KnockoutReport")
      .def_readonly("n", &KnockoutReport::n)
      .def_readonly("w_normal", &KnockoutReport::w_normal)
      .def_readonly("w_knockout", &KnockoutReport::w_knockout)
      .def_readonly("delta_w", &KnockoutReport::delta_w);
  py::class_<SopReport>(m, "SopReport")
      .def_readonly("n", &SopReport::n)
      .def_readonly("f", &SopReport::f)
      .def_readonly("f_nc", &SopReport::f_nc)
      .def_readonly("s_op", &SopReport::s_op);
  py::class_<ScalingRow>(m, "ScalingRow")
      .def_readonly("s", &ScalingRow::s)
      .def_readonly("cells", &ScalingRow::cells)
      .def_readonly("fraction_correct", &ScalingRow::fraction_correct);
  py::class_<ScalingReport>(m, "ScalingReport")
      .def_readonly("n", &ScalingReport::n)
      .def_readonly("rows", &ScalingReport::rows);
  m.def("rule_density", &rule_density, py::arg("fsm"), py::arg("mode"),
        py::arg("n_samples") = 1000000, py::arg("seed") = 0,
        py::arg("exact_cap_bits") = 26);
  m.def("knockout_hidden", &knockout_hidden, py::arg("fsm"), py::arg("lattice"),
        py::arg("n"), py::arg("seed"), py::arg("jobs") = 1);
  m.def("s_op_value", &s_op_value, py::arg("f"), py::arg("f_nc"));
  m.def("self_organization", &self_organization, py::arg("fsm"),
        py::arg("lattice"), py::arg("n"), py::arg("seed"), py::arg("jobs") = 1);
  m.def("scaling_sweep", &scaling_sweep, py::arg("fsm"), py::arg("base"),
        py::arg("s_values"), py::arg("n"), py::arg("seed"), py::arg("jobs") = 1);
}
