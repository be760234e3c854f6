/*
 *  Copyright 2026 The wxbench Authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#include "wxbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "wxbench/error.hpp"
#include "wxbench/parallel.hpp"

namespace wxbench::metrics {

namespace {

using i128 = __int128;

void check_pair(const SaliencyMap& pred, const GroundTruthMask& gt) {
    if (pred.width() != gt.width() || pred.height() != gt.height()) {
        throw Error(ErrorKind::DimMismatch,
                    "prediction is " + std::to_string(pred.width()) + "x" +
                        std::to_string(pred.height()) + " but ground truth is " +
                        std::to_string(gt.width()) + "x" + std::to_string(gt.height()));
    }
}

/// Byte histograms of the prediction split by GT label, plus the GT
/// foreground coordinate sums needed for the centroid.
struct PairHistogram {
    std::array<std::uint64_t, 256> fg{};
    std::array<std::uint64_t, 256> bg{};
    std::uint64_t n = 0;
    std::uint64_t n_fg = 0;
    std::uint64_t pred_sum = 0;
    std::uint64_t fg_row_sum = 0;
    std::uint64_t fg_col_sum = 0;
};

PairHistogram histogram_of(const SaliencyMap& pred, const GroundTruthMask& gt) {
    PairHistogram h;
    const auto p = pred.data();
    const auto g = gt.data();
    const auto w = std::size_t(gt.width());
    h.n = p.size();
    for (std::size_t y = 0, i = 0; y < std::size_t(gt.height()); ++y) {
        std::uint64_t row_fg = 0;
        for (std::size_t x = 0; x < w; ++x, ++i) {
            if (g[i]) {
                ++h.fg[p[i]];
                ++row_fg;
                h.fg_col_sum += x;
            } else {
                ++h.bg[p[i]];
            }
        }
        h.n_fg += row_fg;
        h.fg_row_sum += row_fg * y;
    }
    for (int v = 0; v < 256; ++v) h.pred_sum += std::uint64_t(v) * (h.fg[v] + h.bg[v]);
    return h;
}

/// Suffix counts: positives[k] = pixels with byte >= max(k,1).
struct Positives {
    std::array<std::uint64_t, kThresholdCount> tp{};
    std::array<std::uint64_t, kThresholdCount> fp{};
};

Positives positives_of(const PairHistogram& h) {
    Positives out;
    std::uint64_t tp = 0, fp = 0;
    for (int k = 255; k >= 1; --k) {
        tp += h.fg[std::size_t(k)];
        fp += h.bg[std::size_t(k)];
        out.tp[std::size_t(k)] = tp;
        out.fp[std::size_t(k)] = fp;
    }
    out.tp[0] = out.tp[1];
    out.fp[0] = out.fp[1];
    return out;
}

struct PrF {
    double precision, recall, f;
};

PrF prf(std::uint64_t tp, std::uint64_t fp, std::uint64_t n_fg) {
    const double precision = tp + fp == 0 ? 1.0 : double(tp) / double(tp + fp);
    const double recall = n_fg == 0 ? 0.0 : double(tp) / double(n_fg);
    const double den = kBetaSquared * precision + recall;
    const double f = den == 0.0 ? 0.0 : (1.0 + kBetaSquared) * precision * recall / den;
    return {precision, recall, f};
}

double enhanced(double phi_g, double phi_b) {
    const double den = phi_g * phi_g + phi_b * phi_b;
    const double align = den == 0.0 ? 0.0 : 2.0 * phi_g * phi_b / den;
    return (1.0 + align) * (1.0 + align) / 4.0;
}

/// Enhanced-alignment score of a binarization with \p tp + \p fp positives.
double e_value(std::uint64_t tp, std::uint64_t fp, std::uint64_t n_fg, std::uint64_t n) {
    const auto positives = tp + fp;
    if (n_fg == 0) return double(n - positives) / double(n);
    if (n_fg == n) return double(positives) / double(n);
    const double mu_b = double(positives) / double(n);
    const double mu_g = double(n_fg) / double(n);
    const auto fn = n_fg - tp;
    const auto tn = n - n_fg - fp;
    const double sum = double(tp) * enhanced(1.0 - mu_g, 1.0 - mu_b) +
                       double(fp) * enhanced(-mu_g, 1.0 - mu_b) +
                       double(fn) * enhanced(1.0 - mu_g, -mu_b) +
                       double(tn) * enhanced(-mu_g, -mu_b);
    return sum / double(n);
}

/// Smallest byte counted as positive at the adaptive threshold (256: none).
int adaptive_byte(double threshold) {
    for (int b = 1; b < 256; ++b) {
        if (double(b) / 255.0 >= threshold) return b;
    }
    return 256;
}

double adaptive_threshold_of(const PairHistogram& h) {
    return std::min(2.0 * double(h.pred_sum) / (255.0 * double(h.n)), 1.0);
}

void adaptive_counts(const PairHistogram& h, std::uint64_t& tp, std::uint64_t& fp) {
    tp = fp = 0;
    for (int b = adaptive_byte(adaptive_threshold_of(h)); b < 256; ++b) {
        tp += h.fg[std::size_t(b)];
        fp += h.bg[std::size_t(b)];
    }
}

ThresholdSweep sweep_of(const PairHistogram& h) {
    const auto pos = positives_of(h);
    ThresholdSweep sweep;
    for (std::size_t k = 0; k < std::size_t(kThresholdCount); ++k) {
        const auto r = prf(pos.tp[k], pos.fp[k], h.n_fg);
        sweep.precision[k] = r.precision;
        sweep.recall[k] = r.recall;
        sweep.f[k] = r.f;
        sweep.e[k] = e_value(pos.tp[k], pos.fp[k], h.n_fg, h.n);
    }
    return sweep;
}

Triple summarize(const Curve& curve, double adaptive) {
    double sum = 0.0;
    for (const double v : curve) sum += v;
    return {adaptive, sum / double(kThresholdCount), *std::max_element(curve.begin(), curve.end())};
}

// ---- structure measure -------------------------------------------------

/// Exact integer moments of a set of prediction bytes b and labels g.
struct Moments {
    std::uint64_t n = 0;
    std::uint64_t sum_b = 0;   // sum b
    std::uint64_t sum_bb = 0;  // sum b^2
    std::uint64_t sum_g = 0;   // sum g, g in {0,1}
    std::uint64_t sum_bg = 0;  // sum b*g
};

/// Unbiased (n-1) variance of b/255 from exact integer moments.
double variance_scaled(std::uint64_t n, std::uint64_t sum, std::uint64_t sum_sq, double scale_sq) {
    if (n < 2) return 0.0;
    const i128 num = i128(n) * i128(sum_sq) - i128(sum) * i128(sum);
    return double(num) / (scale_sq * double(n) * double(n - 1));
}

/// Object-aware similarity 2x/(x^2 + 1 + sigma) of a region with n samples.
double object_score(std::uint64_t n, std::uint64_t sum, std::uint64_t sum_sq) {
    if (n == 0) return 0.0;
    const double mean = double(sum) / (255.0 * double(n));
    const double sigma = std::sqrt(variance_scaled(n, sum, sum_sq, 255.0 * 255.0));
    return 2.0 * mean / (mean * mean + 1.0 + sigma);
}

double region_ssim(const Moments& m) {
    const double n = double(m.n);
    const double x = double(m.sum_b) / (255.0 * n);
    const double y = double(m.sum_g) / n;
    double sx = 0.0, sy = 0.0, sxy = 0.0;
    if (m.n >= 2) {
        const double d = n * double(m.n - 1);
        const i128 nx = i128(m.n) * i128(m.sum_bb) - i128(m.sum_b) * i128(m.sum_b);
        const i128 ny = i128(m.n) * i128(m.sum_g) - i128(m.sum_g) * i128(m.sum_g);
        const i128 nxy = i128(m.n) * i128(m.sum_bg) - i128(m.sum_b) * i128(m.sum_g);
        sx = double(nx) / (255.0 * 255.0 * d);
        sy = double(ny) / d;
        sxy = double(nxy) / (255.0 * d);
    }
    const double alpha = 4.0 * x * y * sxy;
    const double beta = (x * x + y * y) * (sx + sy);
    if (alpha != 0.0) return alpha / beta;
    return beta == 0.0 ? 1.0 : 0.0;
}

double s_measure_of(const SaliencyMap& pred, const GroundTruthMask& gt, const PairHistogram& h) {
    const double mean_pred = double(h.pred_sum) / (255.0 * double(h.n));
    if (h.n_fg == 0) return std::clamp(1.0 - mean_pred, 0.0, 1.0);
    if (h.n_fg == h.n) return std::clamp(mean_pred, 0.0, 1.0);

    // Object term: pred over the foreground, 1 - pred over the background.
    std::uint64_t fg_sum = 0, fg_sq = 0, bg_sum = 0, bg_sq = 0;
    for (std::uint64_t v = 0; v < 256; ++v) {
        fg_sum += v * h.fg[v];
        fg_sq += v * v * h.fg[v];
        const auto inv = 255 - v;
        bg_sum += inv * h.bg[v];
        bg_sq += inv * inv * h.bg[v];
    }
    const auto n_bg = h.n - h.n_fg;
    const double object = (double(h.n_fg) * object_score(h.n_fg, fg_sum, fg_sq) +
                           double(n_bg) * object_score(n_bg, bg_sum, bg_sq)) /
                          double(h.n);

    // Region term: quadrants split just after the rounded GT centroid.
    const auto w = std::size_t(gt.width()), rows = std::size_t(gt.height());
    const auto split_x = std::min(
        w, std::size_t(std::round(double(h.fg_col_sum) / double(h.n_fg))) + 1);
    const auto split_y = std::min(
        rows, std::size_t(std::round(double(h.fg_row_sum) / double(h.n_fg))) + 1);
    std::array<Moments, 4> quad{};
    const auto p = pred.data();
    const auto g = gt.data();
    for (std::size_t y = 0; y < rows; ++y) {
        const std::size_t top = y < split_y ? 0 : 2;
        for (std::size_t x = 0; x < w; ++x) {
            auto& m = quad[top + (x < split_x ? 0 : 1)];
            const std::uint64_t b = p[y * w + x];
            const std::uint64_t label = g[y * w + x] ? 1 : 0;
            m.sum_b += b;
            m.sum_bb += b * b;
            m.sum_g += label;
            m.sum_bg += b * label;
        }
    }
    quad[0].n = split_y * split_x;
    quad[1].n = split_y * (w - split_x);
    quad[2].n = (rows - split_y) * split_x;
    quad[3].n = (rows - split_y) * (w - split_x);
    double region = 0.0;
    for (const auto& m : quad) {
        if (m.n > 0) region += double(m.n) * region_ssim(m);
    }
    region /= double(h.n);

    return std::clamp(0.5 * object + 0.5 * region, 0.0, 1.0);
}

double mae_of(const SaliencyMap& pred, const GroundTruthMask& gt) {
    const auto p = pred.data();
    const auto g = gt.data();
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        sum += g[i] ? std::uint64_t(255 - p[i]) : std::uint64_t(p[i]);
    }
    return double(sum) / (255.0 * double(p.size()));
}

template <typename T, typename Add>
T tree_sum(std::span<const T> items, Add add) {
    if (items.size() == 1) return items[0];
    const auto half = items.size() / 2;
    return add(tree_sum(items.first(half), add), tree_sum(items.subspan(half), add));
}

/// Pairwise sum over fixed 64-element leaves; leaves may run in parallel but
/// the tree only depends on items.size().
template <typename T, typename Add>
T deterministic_sum(std::span<const T> items, int workers, Add add) {
    constexpr std::size_t kLeaf = 64;
    const auto blocks = (items.size() + kLeaf - 1) / kLeaf;
    std::vector<T> partial(blocks);
    parallel_for(blocks, workers, [&](std::size_t b) {
        const auto begin = b * kLeaf;
        partial[b] = tree_sum(items.subspan(begin, std::min(kLeaf, items.size() - begin)), add);
    });
    return tree_sum(std::span<const T>(partial), add);
}

} // namespace

double mae(const SaliencyMap& pred, const GroundTruthMask& gt) {
    check_pair(pred, gt);
    return mae_of(pred, gt);
}

double adaptive_threshold(const SaliencyMap& pred) {
    std::uint64_t sum = 0;
    for (const auto v : pred.data()) sum += v;
    return std::min(2.0 * double(sum) / (255.0 * double(pred.size())), 1.0);
}

ThresholdSweep pr_sweep(const SaliencyMap& pred, const GroundTruthMask& gt) {
    check_pair(pred, gt);
    return sweep_of(histogram_of(pred, gt));
}

Triple f_measures(const SaliencyMap& pred, const GroundTruthMask& gt) {
    const auto result = evaluate_pair(pred, gt);
    return {result.scalars.f_adp, result.scalars.f_mean, result.scalars.f_max};
}

Triple e_measures(const SaliencyMap& pred, const GroundTruthMask& gt) {
    const auto result = evaluate_pair(pred, gt);
    return {result.scalars.e_adp, result.scalars.e_mean, result.scalars.e_max};
}

double s_measure(const SaliencyMap& pred, const GroundTruthMask& gt) {
    check_pair(pred, gt);
    return s_measure_of(pred, gt, histogram_of(pred, gt));
}

PairResult evaluate_pair(const SaliencyMap& pred, const GroundTruthMask& gt) {
    check_pair(pred, gt);
    const auto h = histogram_of(pred, gt);
    PairResult out;
    out.sweep = sweep_of(h);

    std::uint64_t tp = 0, fp = 0;
    adaptive_counts(h, tp, fp);
    const auto f = summarize(out.sweep.f, prf(tp, fp, h.n_fg).f);
    const auto e = summarize(out.sweep.e, e_value(tp, fp, h.n_fg, h.n));

    auto& s = out.scalars;
    s.mae = mae_of(pred, gt);
    s.s = s_measure_of(pred, gt, h);
    s.f_adp = f.adaptive;
    s.f_mean = f.mean;
    s.f_max = f.max;
    s.e_adp = e.adaptive;
    s.e_mean = e.mean;
    s.e_max = e.max;
    return out;
}

ScalarMetrics aggregate(std::span<const ScalarMetrics> items, int workers) {
    if (items.empty()) throw Error(ErrorKind::EmptyList, "cannot aggregate an empty result list");
    auto total = deterministic_sum(items, workers, [](const ScalarMetrics& a, const ScalarMetrics& b) {
        return ScalarMetrics{a.mae + b.mae,       a.s + b.s,           a.f_adp + b.f_adp,
                             a.f_mean + b.f_mean, a.f_max + b.f_max,   a.e_adp + b.e_adp,
                             a.e_mean + b.e_mean, a.e_max + b.e_max};
    });
    const double n = double(items.size());
    return ScalarMetrics{total.mae / n,    total.s / n,     total.f_adp / n, total.f_mean / n,
                         total.f_max / n,  total.e_adp / n, total.e_mean / n, total.e_max / n};
}

ThresholdSweep aggregate_sweeps(std::span<const ThresholdSweep> items, int workers) {
    if (items.empty()) throw Error(ErrorKind::EmptyList, "cannot aggregate an empty sweep list");
    auto total = deterministic_sum(items, workers, [](const ThresholdSweep& a, const ThresholdSweep& b) {
        ThresholdSweep sum;
        for (std::size_t k = 0; k < std::size_t(kThresholdCount); ++k) {
            sum.precision[k] = a.precision[k] + b.precision[k];
            sum.recall[k] = a.recall[k] + b.recall[k];
            sum.f[k] = a.f[k] + b.f[k];
            sum.e[k] = a.e[k] + b.e[k];
        }
        return sum;
    });
    const double n = double(items.size());
    for (std::size_t k = 0; k < std::size_t(kThresholdCount); ++k) {
        total.precision[k] /= n;
        total.recall[k] /= n;
        total.f[k] /= n;
        total.e[k] /= n;
    }
    return total;
}

} // namespace wxbench::metrics
