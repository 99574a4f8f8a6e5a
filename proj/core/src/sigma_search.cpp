#include <cmath>

#include "grnn/data.hpp"
#include "grnn/grnn.hpp"

namespace grnn {

SigmaSearchResult select_sigma(const Matrix& inputs, const Matrix& targets,
                               const SigmaSearchOptions& options) {
  if (inputs.rows() != targets.rows()) throw DimensionError("select_sigma: row count mismatch");
  if (!(options.min_sigma > 0.0) || !(options.max_sigma >= options.min_sigma)) {
    throw InvalidArgument("select_sigma: bad sigma range");
  }
  if (options.grid_points < 1) throw InvalidArgument("select_sigma: empty grid");

  const auto [fit_rows, holdout_rows] =
      split_indices(inputs.rows(), options.train_fraction, options.seed);
  Matrix fit_in(0, inputs.cols()), fit_out(0, targets.cols());
  Matrix hold_in(0, inputs.cols()), hold_out(0, targets.cols());
  for (std::size_t r : fit_rows) {
    fit_in.append_row(inputs.row(r));
    fit_out.append_row(targets.row(r));
  }
  for (std::size_t r : holdout_rows) {
    hold_in.append_row(inputs.row(r));
    hold_out.append_row(targets.row(r));
  }

  GrnnModel model = train(fit_in, fit_out, options.min_sigma);
  SigmaSearchResult result;
  const double log_lo = std::log10(options.min_sigma);
  const double log_hi = std::log10(options.max_sigma);
  const std::size_t n = options.grid_points;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
    const double sigma = k + 1 == n && n > 1 ? options.max_sigma : std::pow(10.0, log_lo + t * (log_hi - log_lo));
    model.set_sigma(sigma);
    const double err = mse(model.predict_batch(hold_in, options.threads), hold_out);
    result.curve.emplace_back(sigma, err);
    if (k == 0 || err < result.holdout_mse) {
      result.sigma = sigma;
      result.holdout_mse = err;
    }
  }
  return result;
}

}  // namespace grnn
