#include "illumine/png_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "illumine/error.hpp"

namespace illumine {
namespace {

constexpr std::uint8_t kSignature[8] = {137, 80, 78, 71, 13, 10, 26, 10};

std::uint32_t be32(const std::uint8_t* p) {
  return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
         (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void append_chunk(std::vector<std::uint8_t>& out, const char* type,
                  const std::uint8_t* data, std::size_t len) {
  put_be32(out, static_cast<std::uint32_t>(len));
  const std::size_t type_pos = out.size();
  out.insert(out.end(), type, type + 4);
  if (len) out.insert(out.end(), data, data + len);
  const std::uint32_t crc = static_cast<std::uint32_t>(
      crc32(0L, out.data() + type_pos, static_cast<uInt>(4 + len)));
  put_be32(out, crc);
}

int paeth_predictor(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a);
  const int pb = std::abs(p - b);
  const int pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

// Reverses the per-scanline filters into recon (stride bytes per row).
void unfilter(const std::vector<std::uint8_t>& raw, std::vector<std::uint8_t>& recon,
              std::size_t rows, std::size_t stride, int bpp, std::size_t err_offset) {
  for (std::size_t r = 0; r < rows; ++r) {
    const std::uint8_t ftype = raw[r * (stride + 1)];
    const std::uint8_t* src = raw.data() + r * (stride + 1) + 1;
    std::uint8_t* cur = recon.data() + r * stride;
    const std::uint8_t* up = r ? recon.data() + (r - 1) * stride : nullptr;
    switch (ftype) {
      case 0:
        std::memcpy(cur, src, stride);
        break;
      case 1:
        for (std::size_t i = 0; i < stride; ++i)
          cur[i] = static_cast<std::uint8_t>(src[i] + (i >= std::size_t(bpp) ? cur[i - bpp] : 0));
        break;
      case 2:
        for (std::size_t i = 0; i < stride; ++i)
          cur[i] = static_cast<std::uint8_t>(src[i] + (up ? up[i] : 0));
        break;
      case 3:
        for (std::size_t i = 0; i < stride; ++i) {
          const int left = i >= std::size_t(bpp) ? cur[i - bpp] : 0;
          const int above = up ? up[i] : 0;
          cur[i] = static_cast<std::uint8_t>(src[i] + (left + above) / 2);
        }
        break;
      case 4:
        for (std::size_t i = 0; i < stride; ++i) {
          const int left = i >= std::size_t(bpp) ? cur[i - bpp] : 0;
          const int above = up ? up[i] : 0;
          const int corner = (up && i >= std::size_t(bpp)) ? up[i - bpp] : 0;
          cur[i] = static_cast<std::uint8_t>(src[i] + paeth_predictor(left, above, corner));
        }
        break;
      default:
        throw DecodeError("invalid scanline filter type " + std::to_string(ftype) +
                              " in row " + std::to_string(r),
                          err_offset);
    }
  }
}

}  // namespace

ImageF decode_png(const std::uint8_t* bytes, std::size_t size) {
  for (std::size_t i = 0; i < 8; ++i)
    if (i >= size || bytes[i] != kSignature[i])
      throw DecodeError("not a PNG stream, bad signature", i);

  std::size_t off = 8;
  bool saw_ihdr = false;
  bool saw_iend = false;
  std::uint32_t width = 0, height = 0;
  int color_type = 0;
  std::vector<std::uint8_t> idat;
  std::size_t first_idat = 0;

  while (!saw_iend) {
    if (off + 8 > size) throw DecodeError("truncated chunk header", off);
    const std::uint32_t len = be32(bytes + off);
    if (len > 0x7FFFFFFFu) throw DecodeError("chunk length exceeds PNG limit", off);
    if (off + 12 + std::size_t(len) > size) throw DecodeError("truncated chunk data", off);
    const std::uint8_t* type = bytes + off + 4;
    const std::uint8_t* data = bytes + off + 8;
    const std::uint32_t stored = be32(bytes + off + 8 + len);
    const std::uint32_t computed = static_cast<std::uint32_t>(
        crc32(crc32(0L, type, 4), data, static_cast<uInt>(len)));
    if (stored != computed) throw DecodeError("chunk CRC mismatch", off + 8 + len);
    const std::string name(reinterpret_cast<const char*>(type), 4);

    if (!saw_ihdr && name != "IHDR")
      throw DecodeError("first chunk is not IHDR", off + 4);

    if (name == "IHDR") {
      if (saw_ihdr) throw DecodeError("duplicate IHDR", off + 4);
      if (len != 13) throw DecodeError("IHDR must be 13 bytes", off);
      width = be32(data);
      height = be32(data + 4);
      const int bit_depth = data[8];
      color_type = data[9];
      if (width == 0 || height == 0) throw DecodeError("zero image dimension", off + 8);
      if (std::uint64_t(width) * height > (1ull << 28))
        throw UnsupportedFormatError("image exceeds the supported pixel count");
      if (data[10] != 0 || data[11] != 0)
        throw DecodeError("unknown compression or filter method", off + 18);
      if (bit_depth != 8)
        throw UnsupportedFormatError("only 8-bit PNGs are supported, got bit depth " +
                                     std::to_string(bit_depth));
      if (color_type == 3)
        throw UnsupportedFormatError("paletted PNGs are not supported");
      if (color_type != 0 && color_type != 2 && color_type != 4 && color_type != 6)
        throw UnsupportedFormatError("unsupported color type " + std::to_string(color_type));
      if (data[12] != 0)
        throw UnsupportedFormatError("interlaced PNGs are not supported");
      saw_ihdr = true;
    } else if (name == "IDAT") {
      if (idat.empty()) first_idat = off;
      idat.insert(idat.end(), data, data + len);
    } else if (name == "IEND") {
      saw_iend = true;
    } else if ((type[0] & 0x20) == 0 && name != "PLTE") {
      // PLTE on truecolor images is only a suggested palette; skip it.
      throw UnsupportedFormatError("unhandled critical chunk " + name);
    }
    off += 12 + len;
  }

  if (idat.empty()) throw DecodeError("missing IDAT data", off);

  const int src_ch = color_type == 0 ? 1 : color_type == 2 ? 3 : color_type == 4 ? 2 : 4;
  const std::size_t stride = std::size_t(width) * src_ch;
  const std::size_t raw_size = (stride + 1) * height;
  std::vector<std::uint8_t> raw(raw_size);
  uLongf out_len = raw_size;
  const int zret = uncompress(raw.data(), &out_len, idat.data(),
                              static_cast<uLong>(idat.size()));
  if (zret != Z_OK || out_len != raw_size)
    throw DecodeError("invalid zlib stream in IDAT", first_idat);

  std::vector<std::uint8_t> recon(stride * height);
  unfilter(raw, recon, height, stride, src_ch, first_idat);

  const int out_ch = src_ch >= 3 ? 3 : 1;
  ImageF img(static_cast<int>(height), static_cast<int>(width), out_ch);
  for (std::uint32_t r = 0; r < height; ++r)
    for (std::uint32_t c = 0; c < width; ++c)
      for (int k = 0; k < out_ch; ++k)
        img(r, c, k) = recon[r * stride + std::size_t(c) * src_ch + k] / 255.0;
  return img;
}

ImageF decode_png(const std::vector<std::uint8_t>& bytes) {
  return decode_png(bytes.data(), bytes.size());
}

std::vector<std::uint8_t> encode_png(const ImageF& img) {
  if (!img.is_finite()) throw ParamError("cannot encode an image with non-finite samples");
  const int ch = img.channels();
  const std::size_t stride = std::size_t(img.width()) * ch;
  std::vector<std::uint8_t> raw((stride + 1) * img.height());

  std::size_t pos = 0;
  for (int r = 0; r < img.height(); ++r) {
    raw[pos++] = 0;  // filter type None
    for (int c = 0; c < img.width(); ++c)
      for (int k = 0; k < ch; ++k) {
        const double v = std::clamp(img(r, c, k), 0.0, 1.0);
        raw[pos++] = static_cast<std::uint8_t>(std::llround(v * 255.0));
      }
  }

  uLongf comp_len = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> comp(comp_len);
  if (compress2(comp.data(), &comp_len, raw.data(), static_cast<uLong>(raw.size()),
                Z_BEST_COMPRESSION) != Z_OK)
    throw Error("zlib deflate failed");
  comp.resize(comp_len);

  std::vector<std::uint8_t> out(kSignature, kSignature + 8);
  std::uint8_t ihdr[13];
  const std::uint32_t w = static_cast<std::uint32_t>(img.width());
  const std::uint32_t h = static_cast<std::uint32_t>(img.height());
  ihdr[0] = static_cast<std::uint8_t>(w >> 24);
  ihdr[1] = static_cast<std::uint8_t>(w >> 16);
  ihdr[2] = static_cast<std::uint8_t>(w >> 8);
  ihdr[3] = static_cast<std::uint8_t>(w);
  ihdr[4] = static_cast<std::uint8_t>(h >> 24);
  ihdr[5] = static_cast<std::uint8_t>(h >> 16);
  ihdr[6] = static_cast<std::uint8_t>(h >> 8);
  ihdr[7] = static_cast<std::uint8_t>(h);
  ihdr[8] = 8;                                  // bit depth
  ihdr[9] = ch == 1 ? 0 : 2;                    // gray or truecolor
  ihdr[10] = 0;
  ihdr[11] = 0;
  ihdr[12] = 0;
  append_chunk(out, "IHDR", ihdr, 13);
  append_chunk(out, "IDAT", comp.data(), comp.size());
  append_chunk(out, "IEND", nullptr, 0);
  return out;
}

ImageF read_png(const std::filesystem::path& path) {
  return decode_png(read_file(path));
}

void write_png(const std::filesystem::path& path, const ImageF& img) {
  write_file_atomic(path, encode_png(img));
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (!in.good() && !in.eof()) throw Error("read failed on " + path.string());
  return bytes;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::vector<std::uint8_t>& bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out.good()) throw Error("write failed on " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

}  // namespace illumine
