#pragma once

#include <atomic>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "nlup/downscale.hpp"
#include "nlup/physics.hpp"

namespace nlup {

/// Identifies the problem a model or dataset was built for. One model per
/// fingerprint; initial conditions are deliberately not part of it, so a
/// model is reused across initial conditions.
struct ProblemFingerprint {
  std::string velocity;
  std::string lambda;
  int nx = 0, ny = 0, refine = 0;
  double dt = 0.0;

  bool operator==(const ProblemFingerprint&) const = default;
  std::string to_string() const;
};

ProblemFingerprint fingerprint_of(const TransportProblem& problem);

/// Fully-connected ReLU network with an identity output layer, mapping
/// concat(Sbar_iter, Sbar_prev) to the edge-trace vector.
struct MlpModel {
  std::vector<int> layer_sizes;          // [input, hidden..., output]
  std::vector<Eigen::MatrixXd> weights;  // W[l]: sizes[l+1] x sizes[l]
  std::vector<Eigen::VectorXd> biases;
  std::uint64_t init_seed = 0;
  std::uint64_t train_seed = 0;
  // Quality-gate data, per-entry units; NaN until trained.
  double validation_mse = std::numeric_limits<double>::quiet_NaN();
  double target_variance = std::numeric_limits<double>::quiet_NaN();
  ProblemFingerprint fingerprint;

  int n_layers() const { return static_cast<int>(weights.size()); }
  int input_size() const { return layer_sizes.front(); }
  int output_size() const { return layer_sizes.back(); }
};

/// He-style initialization: W ~ Normal(0, 2/fan_in), b = 0; deterministic
/// under the seed. Throws InvalidArgumentError on degenerate sizes.
MlpModel init_model(const std::vector<int>& layer_sizes, std::uint64_t seed);

Eigen::VectorXd mlp_forward(const MlpModel& model, const Eigen::VectorXd& x);

/// Batched forward; columns are samples.
Eigen::MatrixXd mlp_forward_batch(const MlpModel& model,
                                  const Eigen::MatrixXd& x);

struct ModelGradients {
  std::vector<Eigen::MatrixXd> weight_grads;
  std::vector<Eigen::VectorXd> bias_grads;
  double loss = 0.0;  // (1/B) sum over the batch of ||y - N(x)||_2^2
};

/// Reverse-mode gradients of the mean squared-l2 batch loss. Columns of
/// `x` / `y` are samples; the ReLU subgradient at 0 is 0.
ModelGradients loss_and_gradient(const MlpModel& model, const Eigen::MatrixXd& x,
                                 const Eigen::MatrixXd& y);

struct TrainingSet {
  Eigen::MatrixXd inputs;   // n_samples x input width, row per sample
  Eigen::MatrixXd targets;  // n_samples x output width
  std::uint64_t seed = 0;
  ProblemFingerprint fingerprint;

  int n_samples() const { return static_cast<int>(inputs.rows()); }
};

struct DatasetStats {
  std::int64_t attempts = 0;
  std::int64_t retries = 0;
};

/// Draws inputs i.i.d. uniform on [0,1] and evaluates the provider for
/// the targets. Deterministic under the seed for any worker count (each
/// sample owns a derived RNG stream). Failed local solves are retried
/// with a fresh draw and counted; aborts if the failure rate exceeds 5%.
TrainingSet generate_dataset(const TransportProblem& problem,
                             const TraceProvider& provider, int n_samples,
                             std::uint64_t seed, DatasetStats* stats = nullptr);

struct TrainerConfig {
  double learning_rate = 0.002;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  int batch_size = 32;
  int epochs = 200;
  double validation_fraction = 0.1;
  std::uint64_t shuffle_seed = 0;
};

struct TrainHistory {
  std::vector<double> train_mse;  // per entry, one value per epoch
  std::vector<double> val_mse;
  int n_train = 0;
  int n_val = 0;
};

/// AdaMax over shuffled mini-batches:
///   m <- beta1 m + (1-beta1) g,  u <- max(beta2 u, |g|),
///   theta <- theta - (lr / (1 - beta1^t)) * m / (u + eps).
/// Fills the model's validation_mse / target_variance gate fields.
/// Throws SolverError with epoch/batch diagnostics on non-finite loss.
TrainHistory train(MlpModel& model, const TrainingSet& data,
                   const TrainerConfig& cfg);

/// Quality gate: validation MSE <= 0.1 x target variance (R^2 >= 0.9 on
/// held-out data). Untrained models (NaN fields) fail.
bool passes_quality_gate(const MlpModel& model);

// Versioned little-endian binary formats; load(save(m)) is bitwise exact.
void save_model(const MlpModel& model, const std::string& path);
MlpModel load_model(const std::string& path);
void save_dataset(const TrainingSet& data, const std::string& path);
TrainingSet load_dataset(const std::string& path);

/// Trace provider backed by a trained network. Inputs outside [0,1] are
/// passed through unclamped but counted (and warned once on stderr).
class NnTraceProvider : public TraceProvider {
 public:
  /// Throws ConfigError if the model sizes do not match the mesh.
  NnTraceProvider(const MeshHierarchy& mesh, MlpModel model);

  EdgeTraces traces(const CellAverages& s_iter,
                    const CellAverages& s_prev) const override;
  std::string name() const override { return "nn"; }

  const MlpModel& model() const { return model_; }
  std::uint64_t out_of_range_inputs() const { return out_of_range_.load(); }

 private:
  MlpModel model_;
  mutable std::atomic<std::uint64_t> out_of_range_{0};
  mutable std::atomic<bool> warned_{false};
};

}  // namespace nlup
