#include "scatter/pyramid_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include "scatter/error.hpp"

namespace scatter {

namespace {

constexpr std::array<char, 8> kMagic = {'S', 'Q', 'P', 'Y', 'R', 'M', 'D', '1'};
constexpr std::uint32_t kMaxIdLength = 1u << 20;

template <typename T>
void put(std::ostream& out, T value) {
  static_assert(std::is_unsigned_v<T>);
  std::array<char, sizeof(T)> bytes;
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw Error(ErrorCode::IoError, "pyramid cache is truncated");
  }
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes[i]) << (8 * i);
  return value;
}

}  // namespace

void write_pyramids(std::ostream& out, std::span<const HeatmapPyramid> pyramids) {
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, static_cast<std::uint32_t>(pyramids.size()));
  for (const auto& p : pyramids) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(p.spec_id.size()));
    out.write(p.spec_id.data(), static_cast<std::streamsize>(p.spec_id.size()));
    put<std::uint64_t>(out, p.point_count);
    put<std::uint8_t>(out, static_cast<std::uint8_t>(p.kind()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(p.levels.size()));
    for (const auto& l : p.levels) put<std::uint32_t>(out, static_cast<std::uint32_t>(l.resolution));
    for (const auto& l : p.levels) {
      for (const double c : l.cells) {
        if (l.kind == HeatmapKind::Counts) {
          put<std::uint32_t>(out, static_cast<std::uint32_t>(std::llround(c)));
        } else {
          put<std::uint32_t>(out, std::bit_cast<std::uint32_t>(static_cast<float>(c)));
        }
      }
    }
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing pyramid cache");
}

std::vector<HeatmapPyramid> read_pyramids(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw Error(ErrorCode::IoError, "not a pyramid cache (bad magic)");
  }
  const auto count = get<std::uint32_t>(in);
  std::vector<HeatmapPyramid> pyramids;
  pyramids.reserve(std::min<std::uint32_t>(count, 1u << 16));
  for (std::uint32_t n = 0; n < count; ++n) {
    HeatmapPyramid p;
    const auto id_len = get<std::uint32_t>(in);
    if (id_len > kMaxIdLength) throw Error(ErrorCode::IoError, "pyramid cache: spec id too long");
    p.spec_id.resize(id_len);
    if (!in.read(p.spec_id.data(), id_len)) throw Error(ErrorCode::IoError, "pyramid cache is truncated");
    p.point_count = get<std::uint64_t>(in);
    const auto kind_byte = get<std::uint8_t>(in);
    if (kind_byte > 1) throw Error(ErrorCode::IoError, "pyramid cache: unknown heatmap kind");
    const auto kind = static_cast<HeatmapKind>(kind_byte);
    const auto level_count = get<std::uint32_t>(in);
    if (level_count > 16) throw Error(ErrorCode::IoError, "pyramid cache: too many levels");
    std::vector<std::size_t> resolutions;
    for (std::uint32_t l = 0; l < level_count; ++l) {
      const auto r = get<std::uint32_t>(in);
      if (r < 2 || !is_power_of_two(r) || r > kMaxResolution ||
          (!resolutions.empty() && r != 2 * resolutions.back())) {
        throw Error(ErrorCode::IoError, "pyramid cache: invalid level resolutions");
      }
      resolutions.push_back(r);
    }
    for (const auto r : resolutions) {
      HeatmapLevel level{r, kind, std::vector<double>(r * r)};
      for (auto& c : level.cells) {
        const auto raw = get<std::uint32_t>(in);
        c = kind == HeatmapKind::Counts ? static_cast<double>(raw)
                                        : static_cast<double>(std::bit_cast<float>(raw));
      }
      p.levels.push_back(std::move(level));
    }
    pyramids.push_back(std::move(p));
  }
  return pyramids;
}

}  // namespace scatter
