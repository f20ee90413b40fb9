// Copyright 2026 The SLU Engine Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "slu/nlu/crf.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slu/base/errors.h"

namespace slu::nlu {
namespace {

double LogSumExp(const double *v, int n) {
  double top = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) top = std::max(top, v[i]);
  if (std::isinf(top)) return top;
  double s = 0;
  for (int i = 0; i < n; ++i) s += std::exp(v[i] - top);
  return top + std::log(s);
}

void FillLattice(const double *w, int labels, int features, const std::vector<SparseVector> &x,
                 CrfLattice *lattice) {
  lattice->length = x.size();
  lattice->labels = labels;
  lattice->unary.assign(x.size() * labels, 0.0);
  for (std::size_t t = 0; t < x.size(); ++t) {
    double *row = lattice->unary.data() + t * labels;
    for (int k = 0; k < labels; ++k) {
      const double *wk = w + static_cast<std::size_t>(k) * features;
      for (const auto &[j, v] : x[t]) {
        if (j < features) row[k] += wk[j] * v;
      }
    }
  }
}

std::vector<grammar::SlotSpan> Spans(const Tokens &tokens, const std::vector<std::string> &tags,
                                     bool lenient) {
  if (tokens.size() != tags.size()) {
    throw ConversionError("tag sequence length differs from token count");
  }
  std::vector<grammar::SlotSpan> spans;
  auto close = [&](std::size_t end) {
    if (spans.empty() || spans.back().end != 0) return;
    auto &s = spans.back();
    s.end = end;
    s.value = grammar::Join(Tokens(tokens.begin() + s.begin, tokens.begin() + end));
  };
  bool open = false;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const std::string &tag = tags[i];
    if (tag == kOutside) {
      if (open) close(i);
      open = false;
      continue;
    }
    if (tag.size() < 3 || tag[1] != '-' || (tag[0] != 'B' && tag[0] != 'I')) {
      throw ConversionError("malformed tag '" + tag + "'");
    }
    std::string slot = tag.substr(2);
    if (tag[0] == 'I' && open && spans.back().slot == slot) continue;
    if (tag[0] == 'I' && !lenient) {
      throw ConversionError("tag '" + tag + "' at position " + std::to_string(i) +
                            " does not continue a span");
    }
    if (open) close(i);
    spans.push_back(grammar::SlotSpan{slot, "", i, 0});
    open = true;
  }
  if (open) close(tags.size());
  return spans;
}

}  // namespace

std::vector<std::string> BioLabels(const std::vector<std::string> &slots) {
  std::vector<std::string> labels{kOutside};
  for (const auto &s : slots) {
    labels.push_back("B-" + s);
    labels.push_back("I-" + s);
  }
  return labels;
}

std::vector<std::string> ToBio(const grammar::AnnotatedUtterance &utterance) {
  std::vector<std::string> tags;
  for (const auto &seg : utterance.segments) {
    for (std::size_t i = 0; i < seg.tokens.size(); ++i) {
      if (!seg.IsSlot()) {
        tags.push_back(kOutside);
      } else {
        tags.push_back((i == 0 ? "B-" : "I-") + seg.slot);
      }
    }
  }
  return tags;
}

std::vector<grammar::SlotSpan> FromBio(const Tokens &tokens, const std::vector<std::string> &tags) {
  return Spans(tokens, tags, false);
}

std::vector<grammar::SlotSpan> FromBioLenient(const Tokens &tokens,
                                              const std::vector<std::string> &tags) {
  return Spans(tokens, tags, true);
}

CrfModel::CrfModel(std::vector<std::string> labels, FeatureTable features)
    : labels_(std::move(labels)), features_(std::move(features)) {
  if (labels_.empty() || labels_[0] != kOutside) {
    throw ParameterError("CRF label set must start with O");
  }
  weights_.assign(NumParameters(), 0.0);
}

int CrfModel::LabelId(const std::string &label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

std::size_t CrfModel::NumParameters() const {
  const std::size_t k = labels_.size();
  return k * static_cast<std::size_t>(features_.Size()) + k * k;
}

CrfLattice CrfModel::Lattice(const std::vector<SparseVector> &x) const {
  CrfLattice lattice;
  FillLattice(weights_.data(), NumLabels(), features_.Size(), x, &lattice);
  return lattice;
}

std::vector<int> CrfModel::Viterbi(const std::vector<SparseVector> &x) const {
  const int k = NumLabels();
  const std::size_t n = x.size();
  if (n == 0) return {};
  const CrfLattice lattice = Lattice(x);
  const double *trans = weights_.data() + static_cast<std::size_t>(k) * features_.Size();
  std::vector<double> delta(lattice.Row(0), lattice.Row(0) + k), next(k);
  std::vector<int> back(n * k, 0);
  for (std::size_t t = 1; t < n; ++t) {
    for (int j = 0; j < k; ++j) {
      int arg = 0;
      double best = delta[0] + trans[j];
      for (int i = 1; i < k; ++i) {
        const double s = delta[i] + trans[static_cast<std::size_t>(i) * k + j];
        if (s > best) best = s, arg = i;
      }
      next[j] = best + lattice.Row(t)[j];
      back[t * k + j] = arg;
    }
    delta.swap(next);
  }
  std::vector<int> y(n);
  y[n - 1] = static_cast<int>(std::max_element(delta.begin(), delta.end()) - delta.begin());
  for (std::size_t t = n - 1; t > 0; --t) y[t - 1] = back[t * k + y[t]];
  return y;
}

std::vector<std::string> CrfModel::Tag(const std::vector<SparseVector> &x) const {
  std::vector<std::string> tags;
  for (int id : Viterbi(x)) tags.push_back(labels_[id]);
  return tags;
}

double LogPartition(const CrfLattice &lattice, const double *transition) {
  const int k = lattice.labels;
  if (lattice.length == 0) return 0;
  std::vector<double> alpha(lattice.Row(0), lattice.Row(0) + k), next(k), tmp(k);
  for (std::size_t t = 1; t < lattice.length; ++t) {
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < k; ++i) tmp[i] = alpha[i] + transition[static_cast<std::size_t>(i) * k + j];
      next[j] = LogSumExp(tmp.data(), k) + lattice.Row(t)[j];
    }
    alpha.swap(next);
  }
  return LogSumExp(alpha.data(), k);
}

double SequenceScore(const CrfLattice &lattice, const double *transition,
                     const std::vector<int> &y) {
  const int k = lattice.labels;
  double s = 0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    s += lattice.Row(t)[y[t]];
    if (t > 0) s += transition[static_cast<std::size_t>(y[t - 1]) * k + y[t]];
  }
  return s;
}

CrfMarginals ForwardBackward(const CrfLattice &lattice, const double *transition) {
  const int k = lattice.labels;
  const std::size_t n = lattice.length;
  CrfMarginals m;
  if (n == 0) return m;
  std::vector<double> alpha(n * k), beta(n * k, 0.0), tmp(k);
  std::copy(lattice.Row(0), lattice.Row(0) + k, alpha.begin());
  for (std::size_t t = 1; t < n; ++t) {
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < k; ++i) {
        tmp[i] = alpha[(t - 1) * k + i] + transition[static_cast<std::size_t>(i) * k + j];
      }
      alpha[t * k + j] = LogSumExp(tmp.data(), k) + lattice.Row(t)[j];
    }
  }
  for (std::size_t t = n - 1; t > 0; --t) {
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        tmp[j] = transition[static_cast<std::size_t>(i) * k + j] + lattice.Row(t)[j] +
                 beta[t * k + j];
      }
      beta[(t - 1) * k + i] = LogSumExp(tmp.data(), k);
    }
  }
  m.log_z = LogSumExp(alpha.data() + (n - 1) * k, k);
  m.node.resize(n * k);
  for (std::size_t i = 0; i < n * k; ++i) m.node[i] = std::exp(alpha[i] + beta[i] - m.log_z);
  m.edge.resize((n - 1) * k * k);
  for (std::size_t t = 1; t < n; ++t) {
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        m.edge[((t - 1) * k + i) * k + j] =
            std::exp(alpha[(t - 1) * k + i] + transition[static_cast<std::size_t>(i) * k + j] +
                     lattice.Row(t)[j] + beta[t * k + j] - m.log_z);
      }
    }
  }
  return m;
}

double CrfObjective(const std::vector<double> &w, int labels, int features,
                    const std::vector<CrfSequence> &data, double l2, Execution execution,
                    GradientSum *sum, std::vector<double> *grad) {
  const std::size_t k = labels;
  const std::size_t unary = k * features;
  const double *trans = w.data() + unary;
  auto example = [&](std::size_t e, double *g) {
    const auto &seq = data[e];
    if (seq.x.empty()) return 0.0;
    CrfLattice lattice;
    FillLattice(w.data(), labels, features, seq.x, &lattice);
    const CrfMarginals m = ForwardBackward(lattice, trans);
    for (std::size_t t = 0; t < seq.x.size(); ++t) {
      for (std::size_t c = 0; c < k; ++c) {
        const double r = m.node[t * k + c] - (static_cast<int>(c) == seq.y[t] ? 1.0 : 0.0);
        if (r == 0) continue;
        double *row = g + c * features;
        for (const auto &[j, v] : seq.x[t]) row[j] += r * v;
      }
    }
    double *gt = g + unary;
    for (std::size_t t = 1; t < seq.x.size(); ++t) {
      const double *edge = m.edge.data() + (t - 1) * k * k;
      for (std::size_t i = 0; i < k * k; ++i) gt[i] += edge[i];
      gt[static_cast<std::size_t>(seq.y[t - 1]) * k + seq.y[t]] -= 1.0;
    }
    return m.log_z - SequenceScore(lattice, trans, seq.y);
  };
  return RegularizedMean(data.size(), example, l2, execution, sum, w, grad);
}

void TrainCrfModel(const std::vector<CrfSequence> &data, const GdOptions &options,
                   CrfModel *model) {
  const int k = model->NumLabels(), f = model->Features().Size();
  for (const auto &seq : data) {
    if (seq.x.size() != seq.y.size()) throw TrainingError("CRF sequence length mismatch");
    for (int y : seq.y) {
      if (y < 0 || y >= k) throw TrainingError("CRF label out of range");
    }
  }
  GradientSum sum(model->NumParameters());
  auto &w = model->MutableWeights();
  w.assign(model->NumParameters(), 0.0);
  GradientDescent(
      [&](const std::vector<double> &x, std::vector<double> *g) {
        return CrfObjective(x, k, f, data, options.l2, options.execution, &sum, g);
      },
      options, &w);
}

}  // namespace slu::nlu
