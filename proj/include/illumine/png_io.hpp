#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "illumine/image.hpp"

namespace illumine {

// Decodes an 8-bit grayscale or RGB PNG. An alpha channel, if present, is
// dropped. 16-bit, paletted and interlaced streams raise
// UnsupportedFormatError; anything malformed raises DecodeError carrying the
// byte offset of the failure.
ImageF decode_png(const std::uint8_t* bytes, std::size_t size);
ImageF decode_png(const std::vector<std::uint8_t>& bytes);

// Encodes 8-bit grayscale (1 channel) or RGB (3 channels). Samples are
// clamped to [0, 1], scaled by 255 and rounded half away from zero. Output
// is deterministic: fixed zlib settings, filter type 0 on every scanline,
// a single IDAT chunk.
std::vector<std::uint8_t> encode_png(const ImageF& img);

ImageF read_png(const std::filesystem::path& path);

// Writes atomically: encode to a temporary file next to `path`, then rename.
void write_png(const std::filesystem::path& path, const ImageF& img);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path,
                       const std::vector<std::uint8_t>& bytes);

}  // namespace illumine
