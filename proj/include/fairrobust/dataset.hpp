#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fairrobust {

enum class ColumnKind {
  Numeric,      // bucketized into 4 empirical quartiles, then one-hot
  Categorical,  // one-hot over observed values
  Binary,       // passthrough 0/1 feature
  Label,        // binary outcome
  Group,        // true protected group; never a feature
  NoisyGroup,   // observed proxy group; one-hot feature
  Ignore
};

struct Schema {
  std::map<std::string, ColumnKind> kinds;
  // Kind for columns not listed explicitly; unset means unlisted columns are
  // an error.
  std::optional<ColumnKind> default_kind;
};

struct RawColumn {
  std::string name;
  ColumnKind kind = ColumnKind::Ignore;
  std::vector<std::string> text;  // categorical / group kinds
  std::vector<double> nums;       // numeric / binary / label kinds
};

struct RawTable {
  std::vector<RawColumn> cols;
  long n_rows = 0;
};

struct EncodedDataset {
  Eigen::MatrixXd features;  // n x D, entries in {0,1}
  std::vector<std::string> feature_names;
  std::vector<int> labels;       // 0/1
  std::vector<int> true_groups;  // 0..m-1; excluded from features
  std::vector<int> noisy_groups; // 0..m_hat-1
  int m = 0;
  int m_hat = 0;
  std::vector<std::string> group_names;  // id -> name (shared by both vectors)
  bool has_noisy_feature = false;        // noisy-group one-hots appended?
  std::vector<std::string> warnings;

  long n() const { return static_cast<long>(labels.size()); }
  long dim() const { return features.cols(); }
};

struct SplitSpec {
  double train = 0.6, val = 0.2, test = 0.2;
  uint64_t seed = 0;
};

struct SplitResult {
  EncodedDataset train, val, test;
};

struct NoiseModel {
  Eigen::MatrixXd cond;          // m x m_hat: P(G=j | Ghat=k)
  Eigen::VectorXd ghat_marginal; // m_hat
  Eigen::VectorXd g_marginal;    // m, by total probability
  Eigen::VectorXd gamma;         // m: P(Ghat != G | G=j)
  int m = 0, m_hat = 0;
};

// Parse a comma-separated file (first row header, no quoting). Numeric-like
// kinds are parsed to reals here so format errors carry line numbers.
RawTable load_csv(const std::string& path, const Schema& schema);

// One-hot encoding per column kind; quantile edges are computed on the full
// table (pre-split). Exactly one label and one group column required.
EncodedDataset encode(const RawTable& raw);

// Shuffle rows with the spec seed and cut floor(train*n) / floor(val*n) /
// remainder.
SplitResult split(const EncodedDataset& ds, const SplitSpec& spec);

// Replace the group of a uniformly-chosen floor(gamma*n) subset by a uniform
// draw over the other m-1 groups.
std::vector<int> inject_noise(const std::vector<int>& groups, int m,
                              double gamma, uint64_t seed);

// Conditional noise model from (true, noisy) pairs by direct counting.
NoiseModel estimate_noise_model(
    const std::vector<std::pair<int, int>>& aux_pairs, int m);

// Copy of ds with one-hot columns of ds.noisy_groups appended to features
// (the proxy group is model input; the true group never is).
EncodedDataset with_noisy_group_features(const EncodedDataset& ds);

}  // namespace fairrobust
