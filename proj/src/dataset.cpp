#include "fairrobust/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "fairrobust/errors.hpp"
#include "fairrobust/rng.hpp"

namespace fairrobust {

namespace {

bool is_text_kind(ColumnKind k) {
  return k == ColumnKind::Categorical || k == ColumnKind::Group ||
         k == ColumnKind::NoisyGroup;
}

double parse_number(const std::string& cell, long line, const std::string& col) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || p != cell.data() + cell.size())
    throw ConfigError("line " + std::to_string(line) + ", column '" + col +
                      "': cannot parse '" + cell + "' as a number");
  return v;
}

void split_line(const std::string& line, std::vector<std::string>& out) {
  out.clear();
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r')
    out.back().pop_back();
}

// Empirical quartile edges with midpoint interpolation at q = .25/.5/.75;
// duplicates merged.
std::vector<double> quartile_edges(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  std::vector<double> edges;
  for (double q : {0.25, 0.5, 0.75}) {
    double h = q * (n - 1);
    size_t lo = static_cast<size_t>(std::floor(h));
    size_t hi = static_cast<size_t>(std::ceil(h));
    edges.push_back(0.5 * (values[lo] + values[hi]));
  }
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace

RawTable load_csv(const std::string& path, const Schema& schema) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CSV file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty CSV file: " + path);
  std::vector<std::string> cells;
  split_line(line, cells);

  RawTable table;
  for (const std::string& name : cells) {
    RawColumn col;
    col.name = name;
    auto it = schema.kinds.find(name);
    if (it != schema.kinds.end())
      col.kind = it->second;
    else if (schema.default_kind)
      col.kind = *schema.default_kind;
    else
      throw ConfigError("column '" + name + "' not covered by the schema");
    table.cols.push_back(std::move(col));
  }
  const size_t width = table.cols.size();

  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() && in.eof()) break;
    split_line(line, cells);
    if (cells.size() != width)
      throw ConfigError("line " + std::to_string(lineno) + ": expected " +
                        std::to_string(width) + " cells, found " +
                        std::to_string(cells.size()));
    for (size_t c = 0; c < width; ++c) {
      RawColumn& col = table.cols[c];
      if (col.kind == ColumnKind::Ignore) continue;
      if (is_text_kind(col.kind))
        col.text.push_back(cells[c]);
      else
        col.nums.push_back(parse_number(cells[c], lineno, col.name));
    }
    ++table.n_rows;
  }
  return table;
}

EncodedDataset encode(const RawTable& raw) {
  const long n = raw.n_rows;
  const RawColumn* label_col = nullptr;
  const RawColumn* group_col = nullptr;
  const RawColumn* noisy_col = nullptr;
  for (const RawColumn& c : raw.cols) {
    if (c.kind == ColumnKind::Label) {
      if (label_col) throw ConfigError("multiple label columns in schema");
      label_col = &c;
    }
    if (c.kind == ColumnKind::Group) {
      if (group_col) throw ConfigError("multiple group columns in schema");
      group_col = &c;
    }
    if (c.kind == ColumnKind::NoisyGroup) {
      if (noisy_col) throw ConfigError("multiple noisy-group columns");
      noisy_col = &c;
    }
  }
  if (!label_col || !group_col)
    throw ConfigError("schema must designate exactly one label and one group column");

  EncodedDataset ds;
  ds.labels.resize(n);
  for (long i = 0; i < n; ++i) {
    double v = label_col->nums[i];
    if (v != 0.0 && v != 1.0)
      throw ConfigError("label column '" + label_col->name +
                        "' has non-binary value at data row " +
                        std::to_string(i + 1));
    ds.labels[i] = static_cast<int>(v);
  }

  // Group ids from the sorted true-group vocabulary (deterministic under row
  // reordering). A noisy column must draw from the same vocabulary.
  {
    std::set<std::string> vocab(group_col->text.begin(), group_col->text.end());
    ds.group_names.assign(vocab.begin(), vocab.end());
    ds.m = static_cast<int>(ds.group_names.size());
    ds.m_hat = ds.m;
    std::map<std::string, int> id;
    for (int j = 0; j < ds.m; ++j) id[ds.group_names[j]] = j;
    ds.true_groups.resize(n);
    for (long i = 0; i < n; ++i) ds.true_groups[i] = id[group_col->text[i]];
    if (noisy_col) {
      ds.noisy_groups.resize(n);
      for (long i = 0; i < n; ++i) {
        auto it = id.find(noisy_col->text[i]);
        if (it == id.end())
          throw ConfigError("noisy-group value '" + noisy_col->text[i] +
                            "' at data row " + std::to_string(i + 1) +
                            " does not appear among true groups");
        ds.noisy_groups[i] = it->second;
      }
    } else {
      ds.noisy_groups = ds.true_groups;  // noiseless until injection
    }
  }

  // Pass 1: feature column widths.
  struct Plan {
    const RawColumn* col;
    std::vector<double> edges;           // numeric
    std::vector<std::string> categories; // categorical
    std::map<std::string, int> cat_id;
    int width = 0;
  };
  std::vector<Plan> plans;
  int D = 0;
  for (const RawColumn& c : raw.cols) {
    if (c.kind != ColumnKind::Numeric && c.kind != ColumnKind::Categorical &&
        c.kind != ColumnKind::Binary)
      continue;
    Plan p;
    p.col = &c;
    if (c.kind == ColumnKind::Numeric) {
      p.edges = quartile_edges(c.nums);
      p.width = static_cast<int>(p.edges.size()) + 1;
      if (p.width < 4)
        ds.warnings.push_back("column '" + c.name +
                              "' has duplicate quartile edges; emitting " +
                              std::to_string(p.width) + " buckets");
    } else if (c.kind == ColumnKind::Categorical) {
      std::set<std::string> vocab(c.text.begin(), c.text.end());
      p.categories.assign(vocab.begin(), vocab.end());
      for (int j = 0; j < static_cast<int>(p.categories.size()); ++j)
        p.cat_id[p.categories[j]] = j;
      p.width = static_cast<int>(p.categories.size());
    } else {
      for (long i = 0; i < n; ++i)
        if (c.nums[i] != 0.0 && c.nums[i] != 1.0)
          throw ConfigError("binary column '" + c.name +
                            "' has non-binary value at data row " +
                            std::to_string(i + 1));
      p.width = 1;
    }
    D += p.width;
    plans.push_back(std::move(p));
  }
  if (noisy_col) D += ds.m_hat;

  // Pass 2: fill.
  ds.features = Eigen::MatrixXd::Zero(n, D);
  int base = 0;
  for (const Plan& p : plans) {
    const RawColumn& c = *p.col;
    if (c.kind == ColumnKind::Numeric) {
      for (int b = 0; b < p.width; ++b)
        ds.feature_names.push_back(c.name + "_q" + std::to_string(b));
      for (long i = 0; i < n; ++i) {
        int b = 0;
        for (double e : p.edges)
          if (c.nums[i] > e) ++b;
        ds.features(i, base + b) = 1.0;
      }
    } else if (c.kind == ColumnKind::Categorical) {
      for (const std::string& cat : p.categories)
        ds.feature_names.push_back(c.name + "=" + cat);
      for (long i = 0; i < n; ++i)
        ds.features(i, base + p.cat_id.at(c.text[i])) = 1.0;
    } else {
      ds.feature_names.push_back(c.name);
      for (long i = 0; i < n; ++i) ds.features(i, base) = c.nums[i];
    }
    base += p.width;
  }
  if (noisy_col) {
    for (const std::string& g : ds.group_names)
      ds.feature_names.push_back("ghat=" + g);
    for (long i = 0; i < n; ++i)
      ds.features(i, base + ds.noisy_groups[i]) = 1.0;
    ds.has_noisy_feature = true;
  }
  return ds;
}

namespace {
EncodedDataset take_rows(const EncodedDataset& ds,
                         const std::vector<size_t>& idx) {
  EncodedDataset out;
  out.feature_names = ds.feature_names;
  out.m = ds.m;
  out.m_hat = ds.m_hat;
  out.group_names = ds.group_names;
  out.has_noisy_feature = ds.has_noisy_feature;
  out.warnings = ds.warnings;
  out.features.resize(idx.size(), ds.features.cols());
  out.labels.resize(idx.size());
  out.true_groups.resize(idx.size());
  out.noisy_groups.resize(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) {
    out.features.row(static_cast<long>(i)) = ds.features.row(idx[i]);
    out.labels[i] = ds.labels[idx[i]];
    out.true_groups[i] = ds.true_groups[idx[i]];
    out.noisy_groups[i] = ds.noisy_groups[idx[i]];
  }
  return out;
}
}  // namespace

SplitResult split(const EncodedDataset& ds, const SplitSpec& spec) {
  if (std::abs(spec.train + spec.val + spec.test - 1.0) > 1e-9)
    throw ConfigError("split fractions must sum to 1");
  const long n = ds.n();
  if (n < 5) throw ConfigError("dataset too small to split");
  std::vector<size_t> idx(n);
  for (long i = 0; i < n; ++i) idx[i] = static_cast<size_t>(i);
  Rng rng(mix_seed(spec.seed, {0x59117fULL}));
  rng.shuffle(idx);
  const long n_train = static_cast<long>(spec.train * n);
  const long n_val = static_cast<long>(spec.val * n);
  SplitResult out;
  out.train = take_rows(ds, {idx.begin(), idx.begin() + n_train});
  out.val = take_rows(ds, {idx.begin() + n_train, idx.begin() + n_train + n_val});
  out.test = take_rows(ds, {idx.begin() + n_train + n_val, idx.end()});
  return out;
}

std::vector<int> inject_noise(const std::vector<int>& groups, int m,
                              double gamma, uint64_t seed) {
  if (m < 2) throw ConfigError("inject_noise requires at least two groups");
  const size_t n = groups.size();
  const size_t k = static_cast<size_t>(gamma * n);
  std::vector<int> out = groups;
  Rng rng(mix_seed(seed, {0xf11b5ULL}));
  for (size_t i : rng.sample_without_replacement(n, k)) {
    int other = static_cast<int>(rng.next_below(m - 1));
    if (other >= groups[i]) ++other;  // uniform over the m-1 other groups
    out[i] = other;
  }
  return out;
}

NoiseModel estimate_noise_model(
    const std::vector<std::pair<int, int>>& aux_pairs, int m) {
  if (aux_pairs.empty())
    throw ConfigError("estimate_noise_model: empty auxiliary set");
  NoiseModel nm;
  nm.m = nm.m_hat = m;
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(m, m);
  for (auto [g, ghat] : aux_pairs) {
    if (g < 0 || g >= m || ghat < 0 || ghat >= m)
      throw ConfigError("estimate_noise_model: group id out of range");
    counts(g, ghat) += 1.0;
  }
  Eigen::VectorXd ghat_counts = counts.colwise().sum();
  Eigen::VectorXd g_counts = counts.rowwise().sum();
  for (int k = 0; k < m; ++k)
    if (ghat_counts[k] == 0)
      throw ConfigError("estimate_noise_model: noisy group " +
                        std::to_string(k) + " has no auxiliary pairs");
  for (int j = 0; j < m; ++j)
    if (g_counts[j] == 0)
      throw ConfigError("estimate_noise_model: true group " +
                        std::to_string(j) +
                        " has no auxiliary pairs; gamma undefined");
  nm.cond = counts.array().rowwise() / ghat_counts.transpose().array();
  nm.ghat_marginal = ghat_counts / aux_pairs.size();
  nm.g_marginal = nm.cond * nm.ghat_marginal;
  nm.gamma.resize(m);
  for (int j = 0; j < m; ++j)
    nm.gamma[j] = (g_counts[j] - counts(j, j)) / g_counts[j];
  return nm;
}

EncodedDataset with_noisy_group_features(const EncodedDataset& ds) {
  if (ds.has_noisy_feature)
    throw ConfigError("noisy-group features already present");
  EncodedDataset out = ds;
  const long n = ds.n();
  out.features.conservativeResize(Eigen::NoChange, ds.dim() + ds.m_hat);
  out.features.rightCols(ds.m_hat).setZero();
  for (long i = 0; i < n; ++i)
    out.features(i, ds.dim() + ds.noisy_groups[i]) = 1.0;
  for (const std::string& g : ds.group_names)
    out.feature_names.push_back("ghat=" + g);
  out.has_noisy_feature = true;
  return out;
}

}  // namespace fairrobust
