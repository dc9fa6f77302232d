// Copyright 2026 The s3ce Authors.
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


#include "s3ce/augment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

#include "s3ce/error.hpp"

namespace s3ce {

namespace {

bool in_unit(double p) { return p >= 0.0 && p <= 1.0; }

double sample_bilinear(const Image& img, std::size_t c, double y, double x) {
  const double maxy = static_cast<double>(img.shape.height - 1);
  const double maxx = static_cast<double>(img.shape.width - 1);
  y = std::clamp(y, 0.0, maxy);
  x = std::clamp(x, 0.0, maxx);
  const auto y0 = static_cast<std::size_t>(std::floor(y));
  const auto x0 = static_cast<std::size_t>(std::floor(x));
  const std::size_t y1 = std::min(y0 + 1, img.shape.height - 1);
  const std::size_t x1 = std::min(x0 + 1, img.shape.width - 1);
  const double fy = y - static_cast<double>(y0);
  const double fx = x - static_cast<double>(x0);
  const double top = (1.0 - fx) * img.at(c, y0, x0) + fx * img.at(c, y0, x1);
  const double bottom = (1.0 - fx) * img.at(c, y1, x0) + fx * img.at(c, y1, x1);
  return (1.0 - fy) * top + fy * bottom;
}

// Resamples the window [top, top + h) x [left, left + w) of img onto an
// out_h x out_w grid.
Image resample_window(const Image& img, double top, double left, double h, double w, std::size_t out_h,
                      std::size_t out_w) {
  Image out(ImageShape{out_h, out_w, img.shape.channels});
  const double sy = h / static_cast<double>(out_h);
  const double sx = w / static_cast<double>(out_w);
  for (std::size_t c = 0; c < img.shape.channels; ++c)
    for (std::size_t y = 0; y < out_h; ++y)
      for (std::size_t x = 0; x < out_w; ++x)
        out.at(c, y, x) = sample_bilinear(img, c, top + (static_cast<double>(y) + 0.5) * sy - 0.5,
                                          left + (static_cast<double>(x) + 0.5) * sx - 0.5);
  return out;
}

Image rotate(const Image& img, double degrees) {
  const double t = degrees * std::numbers::pi / 180.0;
  const double ct = std::cos(t);
  const double st = std::sin(t);
  const double cy = (static_cast<double>(img.shape.height) - 1.0) / 2.0;
  const double cx = (static_cast<double>(img.shape.width) - 1.0) / 2.0;
  Image out(img.shape);
  for (std::size_t c = 0; c < img.shape.channels; ++c)
    for (std::size_t y = 0; y < img.shape.height; ++y)
      for (std::size_t x = 0; x < img.shape.width; ++x) {
        const double dx = static_cast<double>(x) - cx;
        const double dy = static_cast<double>(y) - cy;
        out.at(c, y, x) = sample_bilinear(img, c, cy - st * dx + ct * dy, cx + ct * dx + st * dy);
      }
  return out;
}

void clamp_unit(Image& img) {
  for (double& v : img.values) v = std::clamp(v, 0.0, 1.0);
}

double luminance(const Image& img, std::size_t y, std::size_t x) {
  return 0.299 * img.at(0, y, x) + 0.587 * img.at(1, y, x) + 0.114 * img.at(2, y, x);
}

void color_jitter(Image& img, double strength, Rng& rng) {
  const double lo = std::max(0.0, 1.0 - strength);
  const double hi = 1.0 + strength;
  const double brightness = uniform(rng, lo, hi);
  const double contrast = uniform(rng, lo, hi);
  const double saturation = uniform(rng, lo, hi);

  for (double& v : img.values) v *= brightness;
  clamp_unit(img);

  double mean = 0.0;
  const std::size_t plane = img.shape.height * img.shape.width;
  if (img.shape.channels == 3) {
    for (std::size_t y = 0; y < img.shape.height; ++y)
      for (std::size_t x = 0; x < img.shape.width; ++x) mean += luminance(img, y, x);
  } else {
    for (double v : img.values) mean += v;
  }
  mean /= static_cast<double>(plane);
  for (double& v : img.values) v = mean + contrast * (v - mean);
  clamp_unit(img);

  if (img.shape.channels == 3) {
    for (std::size_t y = 0; y < img.shape.height; ++y)
      for (std::size_t x = 0; x < img.shape.width; ++x) {
        const double g = luminance(img, y, x);
        for (std::size_t c = 0; c < 3; ++c) img.at(c, y, x) = g + saturation * (img.at(c, y, x) - g);
      }
    clamp_unit(img);
  }
}

void to_grayscale(Image& img) {
  for (std::size_t y = 0; y < img.shape.height; ++y)
    for (std::size_t x = 0; x < img.shape.width; ++x) {
      const double g = luminance(img, y, x);
      for (std::size_t c = 0; c < 3; ++c) img.at(c, y, x) = g;
    }
}

Image gaussian_blur(const Image& img, double sigma) {
  const int radius = sigma <= 0.5 ? 1 : 2;
  std::vector<double> kernel(2 * radius + 1);
  double total = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    total += kernel[i + radius];
  }
  for (double& k : kernel) k /= total;

  const auto h = static_cast<long>(img.shape.height);
  const auto w = static_cast<long>(img.shape.width);
  Image tmp(img.shape);
  Image out(img.shape);
  for (std::size_t c = 0; c < img.shape.channels; ++c) {
    for (long y = 0; y < h; ++y)
      for (long x = 0; x < w; ++x) {
        double acc = 0.0;
        for (int i = -radius; i <= radius; ++i)
          acc += kernel[i + radius] * img.at(c, y, static_cast<std::size_t>(std::clamp(x + i, 0L, w - 1)));
        tmp.at(c, y, x) = acc;
      }
    for (long y = 0; y < h; ++y)
      for (long x = 0; x < w; ++x) {
        double acc = 0.0;
        for (int i = -radius; i <= radius; ++i)
          acc += kernel[i + radius] * tmp.at(c, static_cast<std::size_t>(std::clamp(y + i, 0L, h - 1)), x);
        out.at(c, y, x) = acc;
      }
  }
  return out;
}

void require_unit_image(const Image& img) {
  if (img.shape.channels != 1 && img.shape.channels != 3) throw ValidationError("images need 1 or 3 channels");
  if (img.values.size() != img.shape.pixels()) throw ValidationError("image value count does not match its shape");
  for (double v : img.values)
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("augment: image values must lie in [0,1]");
}

}  // namespace

void AugmentConfig::validate() const {
  if (!(crop_scale_lo > 0.0 && crop_scale_lo <= crop_scale_hi && crop_scale_hi <= 1.0)) {
    throw ValidationError("augment: crop scale range must satisfy 0 < lo <= hi <= 1");
  }
  if (!(rotation_max_degrees >= 0.0 && rotation_max_degrees <= 180.0)) {
    throw ValidationError("augment: rotation_max_degrees must lie in [0, 180]");
  }
  if (!in_unit(jitter_strength)) throw ValidationError("augment: jitter_strength must lie in [0,1]");
  if (!(blur_sigma_lo > 0.0 && blur_sigma_lo <= blur_sigma_hi)) {
    throw ValidationError("augment: blur sigma range must satisfy 0 < lo <= hi");
  }
  if (!in_unit(grayscale_probability)) throw ValidationError("augment: grayscale_probability must lie in [0,1]");
  if (!in_unit(flip_probability)) throw ValidationError("augment: flip_probability must lie in [0,1]");
}

void AugmentConfig::validate_for(const ImageShape& input) const {
  validate();
  if (enable_crop) {
    const double side = std::sqrt(crop_scale_lo) * static_cast<double>(std::min(input.height, input.width));
    if (side < 1.0) throw ValidationError("augment: crop window degenerates below 1x1 pixel");
  }
}

ImageShape AugmentConfig::output_shape(const ImageShape& input) const {
  if (output_size == 0) return input;
  return ImageShape{output_size, output_size, input.channels};
}

AugmentConfig augmentations_disabled() {
  AugmentConfig cfg;
  cfg.enable_crop = cfg.enable_flip = cfg.enable_rotation = false;
  cfg.enable_jitter = cfg.enable_grayscale = cfg.enable_blur = false;
  return cfg;
}

Image resize_bilinear(const Image& img, std::size_t height, std::size_t width) {
  if (height == 0 || width == 0) throw ValidationError("resize: output size must be >= 1");
  return resample_window(img, 0.0, 0.0, static_cast<double>(img.shape.height), static_cast<double>(img.shape.width),
                         height, width);
}

Image flip_horizontal(const Image& img) {
  Image out(img.shape);
  for (std::size_t c = 0; c < img.shape.channels; ++c)
    for (std::size_t y = 0; y < img.shape.height; ++y)
      for (std::size_t x = 0; x < img.shape.width; ++x) out.at(c, y, x) = img.at(c, y, img.shape.width - 1 - x);
  return out;
}

Image augment(const Image& img, const AugmentConfig& cfg, Rng& rng) {
  require_unit_image(img);
  cfg.validate_for(img.shape);
  const ImageShape out_shape = cfg.output_shape(img.shape);
  const auto h = static_cast<double>(img.shape.height);
  const auto w = static_cast<double>(img.shape.width);

  Image out;
  if (cfg.enable_crop) {
    const double side = std::sqrt(uniform(rng, cfg.crop_scale_lo, cfg.crop_scale_hi));
    const double ch = side * h;
    const double cw = side * w;
    const double top = uniform(rng, 0.0, h - ch);
    const double left = uniform(rng, 0.0, w - cw);
    out = resample_window(img, top, left, ch, cw, out_shape.height, out_shape.width);
  } else {
    out = resize_bilinear(img, out_shape.height, out_shape.width);
  }

  if (cfg.enable_flip && uniform(rng, 0.0, 1.0) < cfg.flip_probability) out = flip_horizontal(out);
  if (cfg.enable_rotation) {
    out = rotate(out, uniform(rng, -cfg.rotation_max_degrees, cfg.rotation_max_degrees));
  }
  if (cfg.enable_jitter) color_jitter(out, cfg.jitter_strength, rng);
  if (cfg.enable_grayscale && out.shape.channels == 3 && uniform(rng, 0.0, 1.0) < cfg.grayscale_probability) {
    to_grayscale(out);
  }
  if (cfg.enable_blur) out = gaussian_blur(out, uniform(rng, cfg.blur_sigma_lo, cfg.blur_sigma_hi));
  clamp_unit(out);
  return out;
}

std::pair<Image, Image> augment_pair(const Image& img, const AugmentConfig& cfg, Rng& rng) {
  Image a = augment(img, cfg, rng);
  Image b = augment(img, cfg, rng);
  return {std::move(a), std::move(b)};
}

namespace {

std::size_t view_width(const LabeledDataset& ds, const AugmentConfig& cfg) {
  return ds.image ? cfg.output_shape(*ds.image).pixels() : ds.samples.cols();
}

void fill_views(const LabeledDataset& ds, std::size_t k, std::size_t sample, const AugmentConfig& cfg,
                std::uint64_t seed, Matrix& out) {
  if (!ds.image) {
    // Non-image samples have no meaningful image transforms: both views are
    // the sample itself.
    auto src = ds.samples.row(sample);
    std::copy(src.begin(), src.end(), out.row(2 * k).begin());
    std::copy(src.begin(), src.end(), out.row(2 * k + 1).begin());
    return;
  }
  Rng rng(derive_seed(seed, {sample}));
  auto [a, b] = augment_pair(ds.image_at(sample), cfg, rng);
  std::copy(a.values.begin(), a.values.end(), out.row(2 * k).begin());
  std::copy(b.values.begin(), b.values.end(), out.row(2 * k + 1).begin());
}

void check_indices(const LabeledDataset& ds, std::span<const std::size_t> indices, const AugmentConfig& cfg) {
  if (indices.empty()) throw ValidationError("view batch needs at least one sample");
  for (std::size_t i : indices)
    if (i >= ds.size()) throw ValidationError("view batch index out of range");
  if (ds.image) cfg.validate_for(*ds.image);
}

}  // namespace

Matrix make_view_batch_serial(const LabeledDataset& ds, std::span<const std::size_t> indices,
                              const AugmentConfig& cfg, std::uint64_t seed) {
  check_indices(ds, indices, cfg);
  Matrix out(2 * indices.size(), view_width(ds, cfg));
  for (std::size_t k = 0; k < indices.size(); ++k) fill_views(ds, k, indices[k], cfg, seed, out);
  return out;
}

Matrix make_view_batch(const LabeledDataset& ds, std::span<const std::size_t> indices, const AugmentConfig& cfg,
                       std::uint64_t seed) {
  check_indices(ds, indices, cfg);
  Matrix out(2 * indices.size(), view_width(ds, cfg));
  const auto count = static_cast<long long>(indices.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < count; ++k) {
    try {
      fill_views(ds, static_cast<std::size_t>(k), indices[static_cast<std::size_t>(k)], cfg, seed, out);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

Matrix clustering_inputs(const LabeledDataset& ds, const AugmentConfig& cfg) {
  if (!ds.image) return ds.samples;
  const ImageShape shape = cfg.output_shape(*ds.image);
  Matrix out(ds.size(), shape.pixels());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const Image r = resize_bilinear(ds.image_at(i), shape.height, shape.width);
    std::copy(r.values.begin(), r.values.end(), out.row(i).begin());
  }
  return out;
}

}  // namespace s3ce
