#ifndef ARS_IO_HPP
#define ARS_IO_HPP

// PGM (P2/P5) and RSF1 raster codecs.
//
// RSF1 layout (all integers little-endian):
//   bytes 0..3   magic "RSF1"
//   bytes 4..7   width  (uint32)
//   bytes 8..11  height (uint32)
//   then width*height IEEE-754 binary32 values, row-major.

#include "ars/error.hpp"
#include "ars/raster.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ars {

using Bytes = std::vector<std::uint8_t>;

namespace detail {

class PnmCursor
{
public:
  explicit PnmCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const noexcept { return pos_; }
  bool at_end() const noexcept { return pos_ >= bytes_.size(); }

  // Whitespace and '#' comments up to end of line.
  void skip_separators()
  {
    while (pos_ < bytes_.size()) {
      const auto ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r')
          ++pos_;
      } else if (std::isspace(ch)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::uint64_t read_uint(const char* what)
  {
    skip_separators();
    if (at_end())
      throw ParseError(std::string("unexpected end of data reading ") + what, pos_);
    if (!std::isdigit(bytes_[pos_]))
      throw ParseError(std::string("expected decimal ") + what, pos_);
    std::uint64_t v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > std::numeric_limits<std::uint32_t>::max())
        throw ParseError(std::string(what) + " is too large", pos_);
      ++pos_;
    }
    return v;
  }

  void expect_single_whitespace()
  {
    if (at_end() || !std::isspace(bytes_[pos_]))
      throw ParseError("expected single whitespace after maxval", pos_);
    ++pos_;
  }

  std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }

private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

inline std::uint32_t load_u32le(const std::uint8_t* p)
{
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
         std::uint32_t(p[3]) << 24;
}

inline void store_u32le(Bytes& out, std::uint32_t v)
{
  for (int i = 0; i < 4; ++i)
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

} // namespace detail

/// Decodes a binary (P5) or ASCII (P2) PGM. Samples are divided by maxval;
/// 16-bit P5 samples are big-endian as the format requires.
inline Raster read_pgm(std::span<const std::uint8_t> bytes)
{
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2'))
    throw ParseError("not a P2/P5 PGM (bad magic)", 0);
  const bool binary = bytes[1] == '5';

  detail::PnmCursor cur(bytes.subspan(2));
  const auto base = [&] { return cur.offset() + 2; };

  const auto width = cur.read_uint("width");
  const auto height = cur.read_uint("height");
  const auto header_dims_end = base();
  const auto maxval = cur.read_uint("maxval");
  if (width == 0 || height == 0)
    throw ParseError("zero image dimension", header_dims_end);
  if (maxval == 0 || maxval > 65535)
    throw ParseError("maxval must be in 1..65535, got " + std::to_string(maxval), base());

  const std::uint64_t count = width * height;
  if (count > (std::uint64_t(1) << 32))
    throw ParseError("image too large", base());

  std::vector<double> data(count);
  const double scale = static_cast<double>(maxval);

  if (binary) {
    cur.expect_single_whitespace();
    const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
    const auto payload = cur.rest();
    if (payload.size() < count * sample_bytes)
      throw ParseError("truncated payload: need " + std::to_string(count * sample_bytes) +
                         " bytes, have " + std::to_string(payload.size()),
                       bytes.size());
    for (std::size_t i = 0; i < count; ++i) {
      std::uint32_t v = sample_bytes == 2
                          ? (std::uint32_t(payload[2 * i]) << 8) | payload[2 * i + 1]
                          : payload[i];
      if (v > maxval)
        throw ParseError("sample exceeds maxval", base() + i * sample_bytes);
      data[i] = v / scale;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const auto at = base();
      const auto v = cur.read_uint("sample");
      if (v > maxval)
        throw ParseError("sample exceeds maxval", at);
      data[i] = v / scale;
    }
  }
  return Raster(width, height, std::move(data));
}

/// Encodes a binary P5 PGM with header "P5\n<w> <h>\n<maxval>\n". Values are
/// clamped to [0,1] and rounded to the nearest level.
inline Bytes write_pgm(const Raster& r, unsigned maxval = 255)
{
  if (maxval != 255 && maxval != 65535)
    throw InvalidArgument("PGM maxval must be 255 or 65535");
  const std::string header = "P5\n" + std::to_string(r.width()) + " " +
                             std::to_string(r.height()) + "\n" + std::to_string(maxval) + "\n";
  Bytes out(header.begin(), header.end());
  out.reserve(out.size() + r.size() * (maxval > 255 ? 2 : 1));
  for (double v : r.data()) {
    const auto q = static_cast<std::uint32_t>(std::lround(std::clamp(v, 0.0, 1.0) * maxval));
    if (maxval > 255)
      out.push_back(static_cast<std::uint8_t>(q >> 8));
    out.push_back(static_cast<std::uint8_t>(q & 0xFF));
  }
  return out;
}

inline constexpr std::string_view kRsfMagic = "RSF1";

/// Values are stored as binary32; the round trip is bit-exact for any
/// raster whose values are representable in single precision.
inline Bytes write_f32(const Raster& r)
{
  if (r.width() > std::numeric_limits<std::uint32_t>::max() ||
      r.height() > std::numeric_limits<std::uint32_t>::max())
    throw InvalidArgument("raster too large for RSF1");
  Bytes out(kRsfMagic.begin(), kRsfMagic.end());
  out.reserve(12 + 4 * r.size());
  detail::store_u32le(out, static_cast<std::uint32_t>(r.width()));
  detail::store_u32le(out, static_cast<std::uint32_t>(r.height()));
  for (double v : r.data())
    detail::store_u32le(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  return out;
}

inline Raster read_f32(std::span<const std::uint8_t> bytes)
{
  if (bytes.size() < 4)
    throw ParseError("truncated RSF header", bytes.size());
  if (std::memcmp(bytes.data(), "RSF", 3) != 0)
    throw ParseError("bad magic, not an RSF raster", 0);
  if (bytes[3] != '1')
    throw ParseError(std::string("unsupported RSF version '") + char(bytes[3]) + "'", 3);
  if (bytes.size() < 12)
    throw ParseError("truncated RSF header", bytes.size());

  const std::uint64_t width = detail::load_u32le(bytes.data() + 4);
  const std::uint64_t height = detail::load_u32le(bytes.data() + 8);
  if (width == 0 || height == 0)
    throw ParseError("zero image dimension", 4);
  const std::uint64_t count = width * height;
  if (count > (std::numeric_limits<std::size_t>::max() - 12) / 4)
    throw ParseError("size overflow", 4);
  if (bytes.size() - 12 < count * 4)
    throw ParseError("truncated payload: need " + std::to_string(count * 4) + " bytes, have " +
                       std::to_string(bytes.size() - 12),
                     bytes.size());

  std::vector<double> data(count);
  for (std::size_t i = 0; i < count; ++i) {
    const float v = std::bit_cast<float>(detail::load_u32le(bytes.data() + 12 + 4 * i));
    if (!std::isfinite(v))
      throw ParseError("non-finite sample", 12 + 4 * i);
    data[i] = v;
  }
  return Raster(width, height, std::move(data));
}

inline Bytes read_file(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out)
    throw Error("write failed for " + path.string());
}

/// Loads by extension: ".rsf" is RSF1, anything else is parsed as PGM.
inline Raster load_raster(const std::filesystem::path& path)
{
  const auto bytes = read_file(path);
  if (path.extension() == ".rsf")
    return read_f32(bytes);
  return read_pgm(bytes);
}

/// Saves by extension: ".rsf" is RSF1, ".pgm" is P5 with the given maxval.
inline void save_raster(const std::filesystem::path& path, const Raster& r, unsigned maxval = 255)
{
  const auto ext = path.extension();
  if (ext == ".rsf")
    write_file(path, write_f32(r));
  else if (ext == ".pgm")
    write_file(path, write_pgm(r, maxval));
  else
    throw InvalidArgument("unknown raster extension '" + ext.string() + "' (use .pgm or .rsf)");
}

} // namespace ars

#endif // ARS_IO_HPP
