#include "dini/io.hpp"

#include "dini/errors.hpp"

#include <json.hpp>

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

namespace dini {

namespace {

using json = nlohmann::json;

void put_f64(std::string& out, double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, 8);
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<char>((u >> (8 * k)) & 0xff));
}

double get_f64(const unsigned char* p) {
  std::uint64_t u = 0;
  for (int k = 0; k < 8; ++k) u |= std::uint64_t(p[k]) << (8 * k);
  double v;
  std::memcpy(&v, &u, 8);
  return v;
}

json header_of(const Domain& d) {
  json h = {{"nx", d.nx()}, {"ny", d.ny()}, {"x0", d.x0()}, {"y0", d.y0()},
            {"dx", d.dx()}, {"dy", d.dy()}, {"dtype", "f64-le"}};
  if (d.masked()) {
    std::string m;
    m.reserve(std::size_t(d.size()));
    for (Index j = 0; j < d.ny(); ++j)
      for (Index i = 0; i < d.nx(); ++i) m.push_back((*d.mask())(i, j) ? '1' : '0');
    h["mask"] = m;
  }
  return h;
}

}  // namespace

void write_field(const SampledField& f, const std::filesystem::path& path) {
  const Domain& d = f.domain;
  std::string out = header_of(d).dump();
  out.push_back('\n');
  out.reserve(out.size() + std::size_t(d.size()) * 8);
  for (Index j = 0; j < d.ny(); ++j)
    for (Index i = 0; i < d.nx(); ++i) put_f64(out, f.values(i, j));
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_field: cannot open " + path.string());
  os.write(out.data(), std::streamsize(out.size()));
  if (!os) throw std::runtime_error("write_field: write failed for " + path.string());
}

SampledField read_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_field: cannot open " + path.string());
  const std::string data((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  const auto nl = data.find('\n');
  if (nl == std::string::npos) throw corrupt_file("read_field: missing header in " + path.string());
  json h;
  try {
    h = json::parse(data.substr(0, nl));
  } catch (const json::exception& e) {
    throw corrupt_file("read_field: bad header in " + path.string() + ": " + e.what());
  }
  try {
    if (h.at("dtype").get<std::string>() != "f64-le")
      throw corrupt_file("read_field: unsupported dtype in " + path.string());
    const Index nx = h.at("nx").get<Index>();
    const Index ny = h.at("ny").get<Index>();
    if (nx < 2 || ny < 2) throw corrupt_file("read_field: bad grid size in " + path.string());
    const std::size_t payload = data.size() - nl - 1;
    if (payload != std::size_t(nx * ny) * 8)
      throw corrupt_file("read_field: payload has " + std::to_string(payload) + " bytes, header needs " +
                         std::to_string(nx * ny * 8) + " in " + path.string());
    Domain d(h.at("x0").get<double>(), h.at("y0").get<double>(), h.at("dx").get<double>(),
             h.at("dy").get<double>(), nx, ny);
    if (h.contains("mask")) {
      const auto m = h.at("mask").get<std::string>();
      if (m.size() != std::size_t(nx * ny)) throw corrupt_file("read_field: mask size mismatch");
      Mask mask(nx, ny);
      for (Index j = 0; j < ny; ++j)
        for (Index i = 0; i < nx; ++i) {
          const char c = m[std::size_t(j * nx + i)];
          if (c != '0' && c != '1') throw corrupt_file("read_field: mask must be '0'/'1'");
          mask(i, j) = c == '1';
        }
      d = d.with_mask(std::move(mask));
    }
    Array2d v(nx, ny);
    const auto* p = reinterpret_cast<const unsigned char*>(data.data() + nl + 1);
    for (Index j = 0; j < ny; ++j)
      for (Index i = 0; i < nx; ++i) v(i, j) = get_f64(p + 8 * std::size_t(j * nx + i));
    return SampledField(std::move(d), std::move(v));
  } catch (const json::exception& e) {
    throw corrupt_file("read_field: bad header in " + path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw corrupt_file("read_field: bad grid in " + path.string() + ": " + e.what());
  }
}

std::filesystem::path write_vector_field(const VectorField& v, const std::filesystem::path& dir,
                                         const std::string& stem) {
  write_field(component(v, 1), dir / (stem + "_v1.field"));
  write_field(component(v, 2), dir / (stem + "_v2.field"));
  json m = {{"grid", header_of(v.domain)},
            {"v1", stem + "_v1.field"},
            {"v2", stem + "_v2.field"},
            {"layout", "v1 at (x_i, y_{j+1/2}), v2 at (x_{i+1/2}, y_j)"}};
  m["grid"].erase("dtype");
  const auto path = dir / (stem + ".json");
  std::ofstream os(path);
  os << m.dump(2) << '\n';
  if (!os) throw std::runtime_error("write_vector_field: write failed for " + path.string());
  return path;
}

VectorField read_vector_field(const std::filesystem::path& manifest) {
  std::ifstream is(manifest);
  if (!is) throw std::runtime_error("read_vector_field: cannot open " + manifest.string());
  json m;
  try {
    m = json::parse(is);
    const auto& g = m.at("grid");
    const Domain d(g.at("x0").get<double>(), g.at("y0").get<double>(), g.at("dx").get<double>(),
                   g.at("dy").get<double>(), g.at("nx").get<Index>(), g.at("ny").get<Index>());
    const auto dir = manifest.parent_path();
    auto a = read_field(dir / m.at("v1").get<std::string>());
    auto b = read_field(dir / m.at("v2").get<std::string>());
    if (!a.domain.same_grid(component_domain(d, 1)) || !b.domain.same_grid(component_domain(d, 2)))
      throw corrupt_file("read_vector_field: component grids disagree with the manifest");
    return VectorField(d, std::move(a.values), std::move(b.values));
  } catch (const json::exception& e) {
    throw corrupt_file("read_vector_field: bad manifest " + manifest.string() + ": " + e.what());
  }
}

}  // namespace dini
