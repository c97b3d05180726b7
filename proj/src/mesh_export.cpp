#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "bw/fsio.hpp"
#include "bw/torus_geometry.hpp"

namespace bw {

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(errc::io_error, "cannot open " + tmp + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      fail(errc::io_error, "short write to " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    int err = errno;
    std::remove(tmp.c_str());
    fail(errc::io_error, "rename to " + path + " failed: " + std::strerror(err));
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot open " + path + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in && !in.eof()) fail(errc::io_error, "read of " + path + " failed");
  return std::move(ss).str();
}

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

void append_double(std::string& out, double d) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  out += buf;
}

void append_vertex(std::string& out, const Vec3& p) {
  out += "v ";
  append_double(out, p.x);
  out += ' ';
  append_double(out, p.y);
  out += ' ';
  append_double(out, p.z);
  out += '\n';
}

}  // namespace

std::string mesh_obj(const std::vector<SolidTorusEmbedding>& tori, std::uint32_t ring_segments) {
  if (ring_segments < 3) fail(errc::validation, "ring_segments below 3");
  std::string out;
  out.reserve(tori.size() * 1024);
  out += "# nested solid-torus tube meshes\n";
  std::size_t base = 1;  // OBJ vertex indices are 1-based and global
  for (const SolidTorusEmbedding& e : tori) {
    const std::size_t n = e.core.size();
    if (n < 3) fail(errc::validation, "torus " + e.group_name() + " has fewer than 3 samples");
    out += "g " + e.group_name() + "\n";
    for (std::size_t i = 0; i < n; ++i) {
      for (std::uint32_t k = 0; k < ring_segments; ++k) {
        double beta = kTwoPi * double(k) / double(ring_segments);
        Vec3 p = e.core[i] +
                 e.radius * (std::cos(beta) * e.normal[i] + std::sin(beta) * e.binormal[i]);
        append_vertex(out, p);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t i2 = (i + 1) % n;
      for (std::uint32_t k = 0; k < ring_segments; ++k) {
        std::uint32_t k2 = (k + 1) % ring_segments;
        std::size_t a = base + i * ring_segments + k;
        std::size_t b = base + i * ring_segments + k2;
        std::size_t c = base + i2 * ring_segments + k2;
        std::size_t d = base + i2 * ring_segments + k;
        out += "f " + std::to_string(a) + ' ' + std::to_string(b) + ' ' + std::to_string(c) + '\n';
        out += "f " + std::to_string(a) + ' ' + std::to_string(c) + ' ' + std::to_string(d) + '\n';
      }
    }
    base += n * ring_segments;
  }
  return out;
}

void export_mesh(const std::vector<SolidTorusEmbedding>& tori, const std::string& path,
                 std::uint32_t ring_segments) {
  write_file_atomic(path, mesh_obj(tori, ring_segments));
}

std::string curves_json(const std::vector<SolidTorusEmbedding>& tori) {
  nlohmann::json doc;
  doc["kind"] = "torus-embedding-curves";
  auto& list = doc["tori"] = nlohmann::json::array();
  for (std::size_t idx = 0; idx < tori.size(); ++idx) {
    const SolidTorusEmbedding& e = tori[idx];
    nlohmann::json t;
    t["name"] = e.group_name();
    t["node"] = e.node.to_string();
    t["role"] = torus_role_name(e.role);
    if (e.role == TorusRole::whitehead) t["whitehead_level"] = e.whitehead_level;
    t["parent"] = e.parent;
    t["radius"] = e.radius;
    auto& samples = t["core"] = nlohmann::json::array();
    for (const Vec3& p : e.core) samples.push_back({p.x, p.y, p.z});
    list.push_back(std::move(t));
  }
  return doc.dump(2) + "\n";
}

void export_curves(const std::vector<SolidTorusEmbedding>& tori, const std::string& path) {
  write_file_atomic(path, curves_json(tori));
}

}  // namespace bw
