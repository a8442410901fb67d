#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "sta/field.hpp"

namespace sta {

namespace {

void put_u64_le(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
  os.write(reinterpret_cast<const char*>(b), 8);
}

void put_f64_le(std::ostream& os, double d) {
  put_u64_le(os, std::bit_cast<std::uint64_t>(d));
}

std::uint64_t get_u64_le(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

double get_f64_le(std::istream& is) { return std::bit_cast<double>(get_u64_le(is)); }

}  // namespace

void write_field(const std::string& path, const MultivectorField& f) {
  const Grid4& g = f.grid();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("write_field: cannot open " + path);
  for (int mu = 0; mu < 4; ++mu)
    put_u64_le(os, static_cast<std::uint64_t>(g.extents[static_cast<std::size_t>(mu)]));
  for (int mu = 0; mu < 4; ++mu) put_f64_le(os, g.spacing[static_cast<std::size_t>(mu)]);
  for (int mu = 0; mu < 4; ++mu) put_f64_le(os, g.origin[static_cast<std::size_t>(mu)]);
  for (std::int64_t i = 0; i < f.size(); ++i)
    for (std::size_t k = 0; k < kBladeCount; ++k) put_f64_le(os, f[i][k]);
  if (!os) throw Error("write_field: write failed for " + path);
  os.close();

  nlohmann::ordered_json side;
  side["format"] = "sta-field";
  side["version"] = 1;
  side["endianness"] = "little";
  side["scalar_type"] = "float64";
  side["header"] = {{"extents", "4 x u64"}, {"spacing", "4 x f64"}, {"origin", "4 x f64"}};
  side["header_bytes"] = 96;
  side["point_stride_bytes"] = 128;
  side["extents"] = g.extents;
  side["spacing"] = g.spacing;
  side["origin"] = g.origin;
  side["periodic"] = g.periodic;
  std::vector<std::string> order;
  for (unsigned m = 0; m < kBladeCount; ++m) order.push_back(blade_name(m));
  side["blade_order"] = order;
  std::ofstream js(path + ".json");
  if (!js) throw Error("write_field: cannot open sidecar for " + path);
  js << side.dump(2) << "\n";
}

MultivectorField read_field(const std::string& path) {
  Grid4 g;
  {
    std::ifstream js(path + ".json");
    if (js) {
      nlohmann::json side;
      js >> side;
      g.periodic = side.value("periodic", false);
    }
  }
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("read_field: cannot open " + path);
  for (int mu = 0; mu < 4; ++mu)
    g.extents[static_cast<std::size_t>(mu)] = static_cast<std::int64_t>(get_u64_le(is));
  for (int mu = 0; mu < 4; ++mu) g.spacing[static_cast<std::size_t>(mu)] = get_f64_le(is);
  for (int mu = 0; mu < 4; ++mu) g.origin[static_cast<std::size_t>(mu)] = get_f64_le(is);
  std::vector<Multivector> values(static_cast<std::size_t>(g.point_count()));
  for (auto& mv : values)
    for (std::size_t k = 0; k < kBladeCount; ++k) mv[k] = get_f64_le(is);
  if (!is) throw Error("read_field: truncated file " + path);
  return MultivectorField(g, std::move(values));
}

}  // namespace sta
