/*
 * Copyright 2026 The FlexDM Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <limits>

#include "learners/factories.hpp"
#include "learners/training_data.hpp"

namespace flexdm {

namespace {

class KnnModel : public Model {
 public:
  KnnModel(FeatureEncoder enc, std::size_t k, std::vector<double> lo, std::vector<double> hi,
           std::vector<std::vector<double>> points, std::vector<std::size_t> labels)
      : enc_(std::move(enc)),
        k_(k),
        lo_(std::move(lo)),
        hi_(std::move(hi)),
        points_(std::move(points)),
        labels_(std::move(labels)) {}

  std::size_t predict(const Dataset& ds, std::size_t row) const override {
    std::vector<double> q = features(ds, row);
    std::vector<std::pair<double, std::size_t>> dist;  // (squared distance, training index)
    dist.reserve(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
      double d = 0.0;
      for (std::size_t a = 0; a < q.size(); ++a) {
        if (a == ds.class_index) continue;
        if (ds.attributes[a].nominal()) {
          d += q[a] == points_[i][a] ? 0.0 : 1.0;
        } else {
          double diff = q[a] - points_[i][a];
          d += diff * diff;
        }
      }
      dist.emplace_back(d, i);
    }
    std::size_t k = std::min(k_, dist.size());
    // Pairs compare by distance, then by training index: lower index wins ties.
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    std::vector<std::size_t> votes(ds.num_classes(), 0);
    for (std::size_t i = 0; i < k; ++i) ++votes[labels_[dist[i].second]];
    return argmax_first(votes);
  }

  // Nominal attributes map to their category index; numerics are min-max scaled
  // with the training range.
  std::vector<double> features(const Dataset& ds, std::size_t row) const {
    std::vector<double> f(ds.num_attributes(), 0.0);
    for (std::size_t a = 0; a < ds.num_attributes(); ++a) {
      if (a == ds.class_index) continue;
      if (ds.attributes[a].nominal()) {
        f[a] = static_cast<double>(enc_.category(ds, row, a));
      } else {
        double span = hi_[a] - lo_[a];
        f[a] = span > 0.0 ? (enc_.numeric(ds, row, a) - lo_[a]) / span : 0.0;
      }
    }
    return f;
  }

  void set_points(std::vector<std::vector<double>> points) { points_ = std::move(points); }

 private:
  FeatureEncoder enc_;
  std::size_t k_;
  std::vector<double> lo_;
  std::vector<double> hi_;
  std::vector<std::vector<double>> points_;
  std::vector<std::size_t> labels_;
};

class KnnFactory : public LearnerFactory {
 public:
  std::string_view name() const override { return "knn"; }
  const std::vector<FlagSpec>& flags() const override {
    static const std::vector<FlagSpec> kFlags = {
        {"-K", "1", "number of neighbours"},
    };
    return kFlags;
  }

 protected:
  std::unique_ptr<Model> fit_rows(const Options& options, const Dataset& ds,
                                  std::span<const std::size_t> rows) const override {
    long k = options.integer("-K");
    if (k < 1) throw LearnerError("number of neighbours must be >= 1: " + options.text("-K"));
    FeatureEncoder enc(ds, rows);
    std::vector<double> lo(ds.num_attributes(), std::numeric_limits<double>::infinity());
    std::vector<double> hi(ds.num_attributes(), -std::numeric_limits<double>::infinity());
    for (std::size_t a = 0; a < ds.num_attributes(); ++a) {
      if (a == ds.class_index || ds.attributes[a].nominal()) continue;
      for (std::size_t r : rows) {
        double v = enc.numeric(ds, r, a);
        lo[a] = std::min(lo[a], v);
        hi[a] = std::max(hi[a], v);
      }
    }
    std::vector<std::size_t> labels;
    for (std::size_t r : rows) labels.push_back(ds.class_label(r));
    auto model = std::make_unique<KnnModel>(enc, static_cast<std::size_t>(k), lo, hi,
                                            std::vector<std::vector<double>>{}, labels);
    std::vector<std::vector<double>> points;
    points.reserve(rows.size());
    for (std::size_t r : rows) points.push_back(model->features(ds, r));
    model->set_points(std::move(points));
    return model;
  }
};

}  // namespace

std::shared_ptr<const LearnerFactory> make_knn_factory() {
  return std::make_shared<KnnFactory>();
}

}  // namespace flexdm
