#include "scatter/collection_store.hpp"

#include <array>
#include <bit>
#include <fstream>

#include "scatter/json_codec.hpp"
#include "scatter/pyramid_io.hpp"

namespace scatter {

namespace fs = std::filesystem;

namespace {

constexpr std::array<char, 8> kPointsMagic = {'S', 'Q', 'P', 'N', 'T', 'S', '0', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> b;
  for (std::size_t i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b.data(), b.size());
}

void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<char, 4> b;
  for (std::size_t i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b.data(), b.size());
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_uint(std::istream& in, std::size_t width) {
  std::array<unsigned char, 8> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), static_cast<std::streamsize>(width))) {
    throw Error(ErrorCode::IoError, "points file is truncated");
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_uint(in, 8)); }

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  return out;
}

EmptyReason empty_reason_from(const std::string& s) {
  if (s == "none") return EmptyReason::None;
  if (s == "no-rows") return EmptyReason::NoRows;
  if (s == "empty-after-clip") return EmptyReason::EmptyAfterClip;
  throw Error(ErrorCode::IoError, "manifest: unknown empty_reason '" + s + "'");
}

}  // namespace

void save_collection(const Collection& collection, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create '" + dir.string() + "': " + ec.message());

  {
    auto out = open_out(dir / "manifest.json");
    out << manifest_json(collection).dump(2) << '\n';
    if (!out) throw Error(ErrorCode::IoError, "failed writing manifest");
  }
  {
    auto out = open_out(dir / "pyramids.bin");
    write_pyramids(out, collection.pyramids());
  }
  auto out = open_out(dir / "points.bin");
  out.write(kPointsMagic.data(), kPointsMagic.size());
  put_u32(out, static_cast<std::uint32_t>(collection.size()));
  for (const auto& ps : collection.point_sets()) {
    put_u32(out, static_cast<std::uint32_t>(ps.spec.id.size()));
    out.write(ps.spec.id.data(), static_cast<std::streamsize>(ps.spec.id.size()));
    put_u64(out, ps.n_before_sampling);
    put_f64(out, ps.source_extent.x_min);
    put_f64(out, ps.source_extent.x_max);
    put_f64(out, ps.source_extent.y_min);
    put_f64(out, ps.source_extent.y_max);
    put_u64(out, ps.points.size());
    for (const auto& p : ps.points) {
      put_f64(out, p.x);
      put_f64(out, p.y);
    }
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing points file");
}

Collection load_collection(const fs::path& dir) {
  Json manifest;
  try {
    auto in = open_in(dir / "manifest.json");
    manifest = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::IoError, "manifest is not valid JSON: " + std::string(e.what()));
  }

  try {
    CollectionInfo info;
    info.id = manifest.at("collection_id").get<std::string>();
    info.dataset_id = manifest.at("dataset_id").get<std::string>();
    info.table_name = manifest.at("table").get<std::string>();
    info.preprocess = preprocess_config_from_json(manifest.at("preprocess"), {});
    info.pyramid = pyramid_config_from_json(manifest.at("pyramid"), {});

    std::vector<ScatterplotSpec> specs;
    std::vector<PlotMeta> meta;
    for (const auto& plot : manifest.at("plots")) {
      auto spec = spec_from_json(plot);
      if (spec.id != plot.at("id").get<std::string>()) {
        throw Error(ErrorCode::IoError, "manifest: plot id does not match its fields");
      }
      specs.push_back(std::move(spec));
      meta.push_back({empty_reason_from(plot.at("empty_reason").get<std::string>()),
                      plot.at("dropped_rows").get<std::size_t>(), plot.at("clipped").get<std::size_t>()});
    }

    auto pyramid_in = open_in(dir / "pyramids.bin");
    auto pyramids = read_pyramids(pyramid_in);

    auto in = open_in(dir / "points.bin");
    std::array<char, 8> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kPointsMagic) {
      throw Error(ErrorCode::IoError, "not a points file (bad magic)");
    }
    const auto count = get_uint(in, 4);
    if (count != specs.size() || pyramids.size() != specs.size()) {
      throw Error(ErrorCode::IoError, "collection files disagree on the number of plots");
    }
    std::vector<PointSet> point_sets;
    point_sets.reserve(specs.size());
    for (std::size_t i = 0; i < count; ++i) {
      const auto id_len = get_uint(in, 4);
      std::string id(id_len, '\0');
      if (!in.read(id.data(), static_cast<std::streamsize>(id_len))) {
        throw Error(ErrorCode::IoError, "points file is truncated");
      }
      if (id != specs[i].id) throw Error(ErrorCode::IoError, "points file order does not match manifest");
      PointSet ps{specs[i], {}, {}, 0};
      ps.n_before_sampling = get_uint(in, 8);
      ps.source_extent = {get_f64(in), get_f64(in), get_f64(in), get_f64(in)};
      const auto n = get_uint(in, 8);
      if (n > ps.n_before_sampling && ps.n_before_sampling != 0) {
        throw Error(ErrorCode::IoError, "points file: more points than before sampling");
      }
      ps.points.reserve(n);
      for (std::uint64_t p = 0; p < n; ++p) {
        const double x = get_f64(in);
        const double y = get_f64(in);
        ps.points.push_back({x, y});
      }
      point_sets.push_back(std::move(ps));
    }
    return Collection(std::move(info), std::move(specs), std::move(point_sets), std::move(pyramids),
                      std::move(meta));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::IoError, "malformed manifest: " + std::string(e.what()));
  }
}

}  // namespace scatter
