#include "isozmc/mesh_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace isozmc {

MeshBuffer tessellate_family(const WeierstrassFamily& f, const GridSpec& grid,
                             const QuadratureConfig& quad, double degenerate_floor) {
  grid.validate();
  MeshBuffer mesh;
  mesh.n_u = grid.n_u;
  mesh.n_v = grid.n_v;
  mesh.vertices.resize(static_cast<std::size_t>(grid.n_u) * grid.n_v);

  // Pre-scan for degeneracies so the error can name the sample.
  for (int i = 0; i < grid.n_u; ++i) {
    for (int j = 0; j < grid.n_v; ++j) {
      const Complex z(grid.u_at(i), grid.v_at(j));
      if (near_degeneracy(f, z, degenerate_floor)) {
        std::ostringstream msg;
        msg << "degenerate sample at grid index (" << i << ", " << j << "), (u,v) = ("
            << z.real() << ", " << z.imag() << ")";
        throw DegeneracyError(msg.str());
      }
    }
  }

  parallel_for(grid.n_u, [&](int i) {
    for (int j = 0; j < grid.n_v; ++j)
      mesh.vertices[static_cast<std::size_t>(i) * grid.n_v + j] =
          integrate_surface(f, Complex(grid.u_at(i), grid.v_at(j)), quad);
  });

  mesh.triangles.reserve(2u * (grid.n_u - 1) * (grid.n_v - 1));
  const auto vid = [&](int i, int j) { return i * grid.n_v + j; };
  for (int i = 0; i + 1 < grid.n_u; ++i) {
    for (int j = 0; j + 1 < grid.n_v; ++j) {
      mesh.triangles.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      mesh.triangles.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  }

  // Coordinate lines: one polyline per grid row (u-line) and column (v-line).
  for (int j = 0; j < grid.n_v; ++j) {
    std::vector<int> line(grid.n_u);
    for (int i = 0; i < grid.n_u; ++i) line[i] = vid(i, j);
    mesh.polylines.push_back(std::move(line));
  }
  for (int i = 0; i < grid.n_u; ++i) {
    std::vector<int> line(grid.n_v);
    for (int j = 0; j < grid.n_v; ++j) line[j] = vid(i, j);
    mesh.polylines.push_back(std::move(line));
  }
  return mesh;
}

namespace {

void append_double(std::string& out, double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  out += buf;
}

}  // namespace

std::string obj_text(const MeshBuffer& mesh) {
  std::string out;
  out.reserve(mesh.vertices.size() * 64);
  out += "# iso-zmc surface mesh\n";
  for (const Vec3& p : mesh.vertices) {
    out += "v ";
    append_double(out, p(1));  // x
    out += ' ';
    append_double(out, p(2));  // y
    out += ' ';
    append_double(out, p(0));  // l as height
    out += '\n';
  }
  for (const auto& t : mesh.triangles) {
    out += "f ";
    out += std::to_string(t[0] + 1);
    out += ' ';
    out += std::to_string(t[1] + 1);
    out += ' ';
    out += std::to_string(t[2] + 1);
    out += '\n';
  }
  for (const auto& line : mesh.polylines) {
    out += 'l';
    for (int v : line) {
      out += ' ';
      out += std::to_string(v + 1);
    }
    out += '\n';
  }
  return out;
}

std::string polyline_sidecar_text(const MeshBuffer& mesh) {
  std::string out;
  out += "# iso-zmc curvature lines: one block per line, x y l per vertex\n";
  for (std::size_t k = 0; k < mesh.polylines.size(); ++k) {
    out += "polyline ";
    out += std::to_string(k);
    out += '\n';
    for (int v : mesh.polylines[k]) {
      const Vec3& p = mesh.vertices[v];
      append_double(out, p(1));
      out += ' ';
      append_double(out, p(2));
      out += ' ';
      append_double(out, p(0));
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace isozmc
