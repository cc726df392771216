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

#include <cmath>
#include <limits>
#include <numbers>

#include "learners/factories.hpp"
#include "learners/training_data.hpp"

namespace flexdm {

namespace {

constexpr double kMinVariance = 1e-9;

struct Gaussian {
  double mean = 0.0;
  double variance = kMinVariance;
};

class NaiveBayesModel : public Model {
 public:
  NaiveBayesModel(FeatureEncoder enc, std::vector<double> log_prior,
                  std::vector<std::vector<std::vector<double>>> log_cond,
                  std::vector<std::vector<Gaussian>> gauss)
      : enc_(std::move(enc)),
        log_prior_(std::move(log_prior)),
        log_cond_(std::move(log_cond)),
        gauss_(std::move(gauss)) {}

  std::size_t predict(const Dataset& ds, std::size_t row) const override {
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    bool have = false;
    for (std::size_t c = 0; c < log_prior_.size(); ++c) {
      if (std::isinf(log_prior_[c])) continue;  // class absent from training rows
      double s = log_prior_[c];
      for (std::size_t a = 0; a < ds.num_attributes(); ++a) {
        if (a == ds.class_index) continue;
        if (ds.attributes[a].nominal()) {
          s += log_cond_[a][c][enc_.category(ds, row, a)];
        } else {
          const Gaussian& g = gauss_[a][c];
          double d = enc_.numeric(ds, row, a) - g.mean;
          s += -0.5 * std::log(2.0 * std::numbers::pi * g.variance) - d * d / (2.0 * g.variance);
        }
      }
      if (!have || s > best_score) {
        best = c;
        best_score = s;
        have = true;
      }
    }
    return best;
  }

 private:
  FeatureEncoder enc_;
  std::vector<double> log_prior_;
  std::vector<std::vector<std::vector<double>>> log_cond_;  // [attr][class][category]
  std::vector<std::vector<Gaussian>> gauss_;                 // [attr][class]
};

class NaiveBayesFactory : public LearnerFactory {
 public:
  std::string_view name() const override { return "nb"; }
  const std::vector<FlagSpec>& flags() const override {
    static const std::vector<FlagSpec> kFlags;
    return kFlags;
  }

 protected:
  std::unique_ptr<Model> fit_rows(const Options&, const Dataset& ds,
                                  std::span<const std::size_t> rows) const override {
    FeatureEncoder enc(ds, rows);
    std::size_t classes = ds.num_classes();
    auto counts = class_counts(ds, rows);
    double n = static_cast<double>(rows.size());

    std::vector<double> log_prior(classes);
    for (std::size_t c = 0; c < classes; ++c) {
      log_prior[c] = counts[c] == 0 ? -std::numeric_limits<double>::infinity()
                                    : std::log(static_cast<double>(counts[c]) / n);
    }

    std::vector<std::vector<std::vector<double>>> log_cond(ds.num_attributes());
    std::vector<std::vector<Gaussian>> gauss(ds.num_attributes());
    for (std::size_t a = 0; a < ds.num_attributes(); ++a) {
      if (a == ds.class_index) continue;
      if (ds.attributes[a].nominal()) {
        std::size_t k = FeatureEncoder::num_categories(ds, a);
        std::vector<std::vector<double>> freq(classes, std::vector<double>(k, 0.0));
        for (std::size_t r : rows) freq[ds.class_label(r)][enc.category(ds, r, a)] += 1.0;
        for (std::size_t c = 0; c < classes; ++c) {
          double denom = static_cast<double>(counts[c]) + static_cast<double>(k);
          for (double& f : freq[c]) f = std::log((f + 1.0) / denom);
        }
        log_cond[a] = std::move(freq);
      } else {
        std::vector<double> sum(classes, 0.0);
        std::vector<double> sq(classes, 0.0);
        for (std::size_t r : rows) sum[ds.class_label(r)] += enc.numeric(ds, r, a);
        std::vector<Gaussian> g(classes);
        for (std::size_t c = 0; c < classes; ++c) {
          if (counts[c] > 0) g[c].mean = sum[c] / static_cast<double>(counts[c]);
        }
        for (std::size_t r : rows) {
          double d = enc.numeric(ds, r, a) - g[ds.class_label(r)].mean;
          sq[ds.class_label(r)] += d * d;
        }
        for (std::size_t c = 0; c < classes; ++c) {
          if (counts[c] > 0) {
            g[c].variance = std::max(kMinVariance, sq[c] / static_cast<double>(counts[c]));
          }
        }
        gauss[a] = std::move(g);
      }
    }
    return std::make_unique<NaiveBayesModel>(std::move(enc), std::move(log_prior),
                                             std::move(log_cond), std::move(gauss));
  }
};

}  // namespace

std::shared_ptr<const LearnerFactory> make_naive_bayes_factory() {
  return std::make_shared<NaiveBayesFactory>();
}

}  // namespace flexdm
