#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "ssbnn/arch.hpp"
#include "ssbnn/checkpoint.hpp"
#include "ssbnn/checks.hpp"
#include "ssbnn/dataset.hpp"
#include "ssbnn/errors.hpp"
#include "ssbnn/inference.hpp"
#include "ssbnn/kl.hpp"
#include "ssbnn/metrics.hpp"
#include "ssbnn/oracle.hpp"
#include "ssbnn/train.hpp"
#include "ssbnn/variational.hpp"
#include "ssbnn/vi.hpp"

namespace py = pybind11;
using namespace ssbnn;

PYBIND11_MODULE(_core, m) {
    m.doc() = "spike-and-slab Bayesian neural networks";

    py::register_exception<data_error>(m, "DataError", PyExc_RuntimeError);
    py::register_exception<numerical_error>(m, "NumericalError", PyExc_RuntimeError);
    py::register_exception<capacity_error>(m, "CapacityError", PyExc_RuntimeError);
    py::register_exception<infeasible_error>(m, "InfeasibleError", PyExc_RuntimeError);

    py::enum_<Estimator>(m, "Estimator")
        .value("relaxed", Estimator::relaxed)
        .value("score_function", Estimator::score_function);
    py::enum_<KlMode>(m, "KlMode")
        .value("analytic", KlMode::analytic)
        .value("monte_carlo", KlMode::monte_carlo);
    py::enum_<PostTrainMode>(m, "PostTrainMode")
        .value("sampled_gamma", PostTrainMode::sampled_gamma)
        .value("median", PostTrainMode::median);
    py::enum_<EvalMode>(m, "EvalMode")
        .value("averaged", EvalMode::averaged)
        .value("single_draw", EvalMode::single_draw)
        .value("median", EvalMode::median)
        .value("postmean", EvalMode::postmean);
    py::enum_<WeightRule>(m, "WeightRule")
        .value("sample_beta", WeightRule::sample_beta)
        .value("expected_beta", WeightRule::expected_beta);

    py::class_<NetworkArch>(m, "NetworkArch")
        .def(py::init<std::vector<int>>(), py::arg("layer_widths"))
        .def_readonly("layer_widths", &NetworkArch::layer_widths)
        .def("depth", &NetworkArch::depth)
        .def("total_slots", &NetworkArch::total_slots)
        .def("layer_slots", &NetworkArch::layer_slots)
        .def("input_dim", &NetworkArch::input_dim)
        .def("output_dim", &NetworkArch::output_dim);

    py::class_<PriorConfig>(m, "PriorConfig")
        .def(py::init([](double psi, double sigma_beta_sq) {
                 PriorConfig p{psi, sigma_beta_sq};
                 p.validate();
                 return p;
             }),
             py::arg("psi"), py::arg("sigma_beta_sq") = 1.0)
        .def_readwrite("psi", &PriorConfig::psi)
        .def_readwrite("sigma_beta_sq", &PriorConfig::sigma_beta_sq);

    py::class_<VariationalState>(m, "VariationalState")
        .def_static("zeros", &VariationalState::zeros, py::arg("arch"))
        .def_readwrite("mu", &VariationalState::mu)
        .def_readwrite("rho", &VariationalState::rho)
        .def_readwrite("omega", &VariationalState::omega);

    py::class_<LabeledDataset>(m, "LabeledDataset")
        .def(py::init<>())
        .def_readwrite("features", &LabeledDataset::features)
        .def_readwrite("labels", &LabeledDataset::labels)
        .def_readwrite("n", &LabeledDataset::n)
        .def_readwrite("d", &LabeledDataset::d)
        .def_readwrite("class_count", &LabeledDataset::class_count)
        .def_readwrite("provenance", &LabeledDataset::provenance)
        .def("validate", &LabeledDataset::validate);

    py::class_<TrainConfig>(m, "TrainConfig")
        .def(py::init<>())
        .def_readwrite("batch_size", &TrainConfig::batch_size)
        .def_readwrite("epochs", &TrainConfig::epochs)
        .def_readwrite("mc_samples", &TrainConfig::mc_samples)
        .def_readwrite("lr_mu", &TrainConfig::lr_mu)
        .def_readwrite("lr_rho", &TrainConfig::lr_rho)
        .def_readwrite("lr_omega", &TrainConfig::lr_omega)
        .def_readwrite("estimator", &TrainConfig::estimator)
        .def_readwrite("delta", &TrainConfig::delta)
        .def_readwrite("baseline_decay", &TrainConfig::baseline_decay)
        .def_readwrite("kl_mode", &TrainConfig::kl_mode)
        .def_readwrite("seed", &TrainConfig::seed)
        .def("validate", &TrainConfig::validate);

    py::class_<EpochStats>(m, "EpochStats")
        .def_readonly("epoch", &EpochStats::epoch)
        .def_readonly("mean_elbo", &EpochStats::mean_elbo)
        .def_readonly("seconds", &EpochStats::seconds);

    py::class_<PointModel>(m, "PointModel")
        .def_readwrite("mask", &PointModel::mask)
        .def_readwrite("rule", &PointModel::rule)
        .def_readwrite("dense_mean", &PointModel::dense_mean)
        .def("active_count", &PointModel::active_count);

    py::class_<PredictiveSummary>(m, "PredictiveSummary")
        .def_readonly("probs", &PredictiveSummary::probs)
        .def_readonly("entropy", &PredictiveSummary::entropy)
        .def_readonly("predicted_class", &PredictiveSummary::predicted_class)
        .def_readonly("doubt_decision", &PredictiveSummary::doubt_decision)
        .def_readonly("active_union_count", &PredictiveSummary::active_union_count);

    py::class_<EvalSpec>(m, "EvalSpec")
        .def(py::init<>())
        .def_readwrite("mode", &EvalSpec::mode)
        .def_readwrite("rule", &EvalSpec::rule)
        .def_readwrite("R", &EvalSpec::R)
        .def_readwrite("doubt_threshold", &EvalSpec::doubt_threshold)
        .def_readwrite("lambda_", &EvalSpec::lambda)
        .def_readwrite("seed", &EvalSpec::seed);

    py::class_<EvalMetrics>(m, "EvalMetrics")
        .def(py::init<>())
        .def_readwrite("mode", &EvalMetrics::mode)
        .def_readwrite("R", &EvalMetrics::R)
        .def_readwrite("n_examples", &EvalMetrics::n_examples)
        .def_readwrite("accuracy_all", &EvalMetrics::accuracy_all)
        .def_readwrite("accuracy_doubt", &EvalMetrics::accuracy_doubt)
        .def_readwrite("num_classified", &EvalMetrics::num_classified)
        .def_readwrite("density", &EvalMetrics::density)
        .def_readwrite("mean_entropy", &EvalMetrics::mean_entropy)
        .def_readwrite("rho_per_layer", &EvalMetrics::rho_per_layer)
        .def_readwrite("seed", &EvalMetrics::seed);

    py::class_<SparsityReport>(m, "SparsityReport")
        .def_readonly("rho_per_layer", &SparsityReport::rho_per_layer)
        .def_readonly("density", &SparsityReport::density)
        .def_readonly("alpha_histogram", &SparsityReport::alpha_histogram);

    py::class_<Checkpoint>(m, "Checkpoint")
        .def(py::init<>())
        .def_readwrite("arch", &Checkpoint::arch)
        .def_readwrite("prior", &Checkpoint::prior)
        .def_readwrite("state", &Checkpoint::state)
        .def_readwrite("seed", &Checkpoint::seed)
        .def_readwrite("epochs_completed", &Checkpoint::epochs_completed)
        .def_readwrite("estimator", &Checkpoint::estimator)
        .def_readwrite("delta", &Checkpoint::delta);

    py::class_<TinyInstance>(m, "TinyInstance")
        .def(py::init<>())
        .def_readwrite("arch", &TinyInstance::arch)
        .def_readwrite("data", &TinyInstance::data)
        .def_readwrite("prior", &TinyInstance::prior)
        .def_readwrite("quad_order", &TinyInstance::quad_order)
        .def("validate", &TinyInstance::validate);

    py::class_<OracleCheckOptions>(m, "OracleCheckOptions")
        .def(py::init<>())
        .def_readwrite("seed", &OracleCheckOptions::seed)
        .def_readwrite("elbo_draws", &OracleCheckOptions::elbo_draws)
        .def_readwrite("grad_draws", &OracleCheckOptions::grad_draws)
        .def_readwrite("kl_states", &OracleCheckOptions::kl_states)
        .def_readwrite("kl_draws", &OracleCheckOptions::kl_draws)
        .def_readwrite("relaxed_points", &OracleCheckOptions::relaxed_points)
        .def_readwrite("inject_bias", &OracleCheckOptions::inject_bias);

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("pass_", &CheckResult::pass)
        .def_readonly("observed", &CheckResult::observed)
        .def_readonly("tolerance", &CheckResult::tolerance)
        .def_readonly("seconds", &CheckResult::seconds)
        .def_readonly("detail", &CheckResult::detail);

    m.def("load_idx", &load_idx, py::arg("images_path"), py::arg("labels_path"));
    m.def("take_prefix", &take_prefix, py::arg("data"), py::arg("k"));
    m.def(
        "batch_indices",
        [](int n, int batch_size, std::uint64_t seed, int epoch) {
            return batch_indices(n, batch_size, seed, epoch);
        },
        py::arg("n"), py::arg("batch_size"), py::arg("seed"), py::arg("epoch"));

    m.def(
        "init_state",
        [](const NetworkArch& arch, const PriorConfig& prior, std::uint64_t seed) {
            RandomStream rng(seed);
            return init_state(arch, prior, rng);
        },
        py::arg("arch"), py::arg("prior"), py::arg("seed"));

    m.def(
        "train",
        [](const NetworkArch& arch, VariationalState& state, const PriorConfig& prior,
           const LabeledDataset& data, const TrainConfig& config, std::uint64_t seed) {
            RandomStream rng(seed);
            return train(arch, state, prior, data, config, rng);
        },
        py::arg("arch"), py::arg("state"), py::arg("prior"), py::arg("data"),
        py::arg("config"), py::arg("seed"),
        "Runs config.epochs of optimization, mutating `state` in place.");

    m.def(
        "post_train",
        [](const NetworkArch& arch, VariationalState& state, const PriorConfig& prior,
           const LabeledDataset& data, const TrainConfig& config, PostTrainMode mode,
           std::uint64_t seed) {
            RandomStream rng(seed);
            return post_train(arch, state, prior, data, config, mode, rng);
        },
        py::arg("arch"), py::arg("state"), py::arg("prior"), py::arg("data"),
        py::arg("config"), py::arg("mode"), py::arg("seed"));

    m.def(
        "elbo_estimate",
        [](const NetworkArch& arch, const VariationalState& state, const PriorConfig& prior,
           const LabeledDataset& data, const std::vector<int>& idx, const TrainConfig& config,
           std::uint64_t seed) {
            RandomStream rng(seed);
            return elbo_estimate(arch, state, prior, data, idx, config, rng);
        },
        py::arg("arch"), py::arg("state"), py::arg("prior"), py::arg("data"), py::arg("idx"),
        py::arg("config"), py::arg("seed"));

    m.def("kl_analytic", &kl_analytic, py::arg("arch"), py::arg("state"), py::arg("prior"));

    m.def("evaluate", &evaluate, py::arg("arch"), py::arg("state"), py::arg("data"),
          py::arg("spec"));
    m.def(
        "predict_averaged",
        [](const NetworkArch& arch, const VariationalState& state, std::vector<double> x,
           int R, std::uint64_t seed, double doubt_threshold) {
            RandomStream rng(seed);
            return predict_averaged(arch, state, x, R, rng, doubt_threshold);
        },
        py::arg("arch"), py::arg("state"), py::arg("x"), py::arg("R"), py::arg("seed"),
        py::arg("doubt_threshold") = 0.95);

    m.def("median_model", &median_model, py::arg("arch"), py::arg("state"));
    m.def("threshold_model", &threshold_model, py::arg("arch"), py::arg("state"),
          py::arg("lambda_"));
    m.def("posterior_mean_model", &posterior_mean_model, py::arg("arch"), py::arg("state"));
    m.def(
        "check_feasibility",
        [](const NetworkArch& arch, const PointModel& model) {
            std::string why;
            bool ok = check_feasibility(arch, model, &why);
            return py::make_tuple(ok, why);
        },
        py::arg("arch"), py::arg("model"),
        "Returns (feasible, diagnostic); the diagnostic is empty when feasible.");
    m.def(
        "sparsity_report",
        [](const NetworkArch& arch, const VariationalState& state) {
            return sparsity_report(arch, state);
        },
        py::arg("arch"), py::arg("state"));
    m.def("entropy_cdf", &entropy_cdf, py::arg("entropies"));

    m.def("save_checkpoint", &save_checkpoint, py::arg("path"), py::arg("checkpoint"));
    m.def("load_checkpoint", &load_checkpoint, py::arg("path"));
    m.def("metrics_to_json", &metrics_to_json, py::arg("metrics"));
    m.def("metrics_from_json", &metrics_from_json, py::arg("line"));

    m.def("exact_elbo", &exact_elbo, py::arg("instance"), py::arg("state"),
          py::arg("kl_mode") = KlMode::analytic);
    m.def("exact_log_evidence", &exact_log_evidence, py::arg("instance"));
    m.def("exact_marginal_inclusion", &exact_marginal_inclusion, py::arg("instance"));
    m.def("exact_mask_posterior", &exact_mask_posterior, py::arg("instance"));

    m.def("run_oracle_checks", &run_oracle_checks, py::arg("options"));
}
