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

#include "wxbench/png_io.hpp"

#include <png.h>

#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "wxbench/error.hpp"

namespace wxbench {

namespace {

struct Decoded {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::uint8_t> data;
};

// RAII guard for the simplified libpng API.
class PngImage {
public:
    PngImage() {
        std::memset(&image_, 0, sizeof(image_));
        image_.version = PNG_IMAGE_VERSION;
    }
    ~PngImage() { png_image_free(&image_); }
    PngImage(const PngImage&) = delete;
    PngImage& operator=(const PngImage&) = delete;

    png_image* get() noexcept { return &image_; }
    png_image* operator->() noexcept { return &image_; }
    std::string message() const { return image_.message; }

private:
    png_image image_;
};

Decoded decode(std::span<const std::uint8_t> png) {
    PngImage image;
    if (!png_image_begin_read_from_memory(image.get(), png.data(), png.size())) {
        throw Error(ErrorKind::MalformedPng, "cannot decode PNG: " + image.message());
    }
    const auto format = image->format;
    if (format & PNG_FORMAT_FLAG_LINEAR) {
        throw Error(ErrorKind::MalformedPng, "only 8-bit PNGs are supported");
    }
    if (format & PNG_FORMAT_FLAG_ALPHA) {
        throw Error(ErrorKind::MalformedPng, "PNGs with an alpha channel are not supported");
    }
    Decoded out;
    out.width = int(image->width);
    out.height = int(image->height);
    out.channels = (format & PNG_FORMAT_FLAG_COLOR) ? 3 : 1;
    image->format = out.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    out.data.resize(PNG_IMAGE_SIZE(*image.get()));
    if (!png_image_finish_read(image.get(), nullptr, out.data.data(), 0, nullptr)) {
        throw Error(ErrorKind::MalformedPng, "cannot decode PNG: " + image.message());
    }
    return out;
}

std::vector<std::uint8_t> to_gray(Decoded decoded) {
    if (decoded.channels == 1) return std::move(decoded.data);
    std::vector<std::uint8_t> gray(std::size_t(decoded.width) * std::size_t(decoded.height));
    for (std::size_t i = 0; i < gray.size(); ++i) {
        const auto r = decoded.data[3 * i];
        if (decoded.data[3 * i + 1] != r || decoded.data[3 * i + 2] != r) {
            throw Error(ErrorKind::MalformedPng, "expected a grayscale PNG");
        }
        gray[i] = r;
    }
    return gray;
}

std::vector<std::uint8_t> encode(int width, int height, int channels,
                                 std::span<const std::uint8_t> data) {
    PngImage image;
    image->width = png_uint_32(width);
    image->height = png_uint_32(height);
    image->format = channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    png_alloc_size_t size = 0;
    if (!png_image_write_get_memory_size(*image.get(), size, 0, data.data(), 0, nullptr)) {
        throw Error(ErrorKind::Io, "cannot encode PNG: " + image.message());
    }
    std::vector<std::uint8_t> out(size);
    if (!png_image_write_to_memory(image.get(), out.data(), &size, 0, data.data(), 0, nullptr)) {
        throw Error(ErrorKind::Io, "cannot encode PNG: " + image.message());
    }
    out.resize(size);
    return out;
}

template <typename Fn>
auto with_path_context(const std::filesystem::path& path, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

} // namespace

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::error_code ec;
        if (!std::filesystem::exists(path, ec)) {
            throw Error(ErrorKind::NotFound, path.string() + ": no such file");
        }
        throw Error(ErrorKind::Io, path.string() + ": cannot open for reading");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, path.string() + ": cannot open for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) throw Error(ErrorKind::Io, path.string() + ": write failed");
}

ImageBuffer decode_image(std::span<const std::uint8_t> png) {
    auto decoded = decode(png);
    return ImageBuffer(decoded.width, decoded.height, decoded.channels, std::move(decoded.data));
}

GroundTruthMask decode_mask(std::span<const std::uint8_t> png) {
    auto decoded = decode(png);
    const int w = decoded.width, h = decoded.height;
    return GroundTruthMask(w, h, to_gray(std::move(decoded)));
}

SaliencyMap decode_saliency(std::span<const std::uint8_t> png) {
    auto decoded = decode(png);
    const int w = decoded.width, h = decoded.height;
    return SaliencyMap(w, h, to_gray(std::move(decoded)));
}

ImageBuffer load_image(const std::filesystem::path& path) {
    return with_path_context(path, [&] { return decode_image(read_file(path)); });
}

GroundTruthMask load_mask(const std::filesystem::path& path) {
    return with_path_context(path, [&] { return decode_mask(read_file(path)); });
}

SaliencyMap load_saliency(const std::filesystem::path& path) {
    return with_path_context(path, [&] { return decode_saliency(read_file(path)); });
}

std::vector<std::uint8_t> encode_png(const ImageBuffer& image) {
    return encode(image.width(), image.height(), image.channels(), image.data());
}

std::vector<std::uint8_t> encode_png(const GrayRaster& raster) {
    return encode(raster.width(), raster.height(), 1, raster.data());
}

void save_png(const ImageBuffer& image, const std::filesystem::path& path) {
    write_file(path, encode_png(image));
}

void save_png(const GrayRaster& raster, const std::filesystem::path& path) {
    write_file(path, encode_png(raster));
}

} // namespace wxbench
