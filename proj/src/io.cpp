#include "dendrite/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace dendrite {

static_assert(std::endian::native == std::endian::little,
              "raw field dumps assume a little-endian host");

void dump_field(const ScalarField& f, const std::string& path,
                const std::string& name, double time) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("dump_field: cannot open " + path);
  out.write(reinterpret_cast<const char*>(f.values.data()),
            std::streamsize(f.size() * sizeof(double)));
  if (!out) throw IoError("dump_field: short write to " + path);
  out.close();

  nlohmann::json meta;
  meta["nx"] = f.grid.n[0];
  meta["ny"] = f.grid.n[1];
  meta["nz"] = f.grid.dims == 3 ? f.grid.n[2] : 1;
  meta["lx"] = f.grid.length[0];
  meta["ly"] = f.grid.length[1];
  meta["lz"] = f.grid.dims == 3 ? f.grid.length[2] : 0.0;
  meta["time"] = time;
  meta["name"] = name;
  std::ofstream side(path + ".json");
  if (!side) throw IoError("dump_field: cannot open " + path + ".json");
  side << meta.dump(2) << "\n";
}

ScalarField load_field(const std::string& path) {
  std::ifstream side(path + ".json");
  if (!side) throw IoError("load_field: cannot open " + path + ".json");
  nlohmann::json meta = nlohmann::json::parse(side);
  const int nx = meta.at("nx").get<int>();
  const int ny = meta.at("ny").get<int>();
  const int nz = meta.at("nz").get<int>();
  const double lx = meta.at("lx").get<double>();
  const double ly = meta.at("ly").get<double>();
  const double lz = meta.at("lz").get<double>();

  Grid g = nz > 1 ? Grid::make_3d(nx, ny, nz, lx, ly, lz)
                  : Grid::make_2d(nx, ny, lx, ly);
  ScalarField f(g);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("load_field: cannot open " + path);
  in.read(reinterpret_cast<char*>(f.values.data()),
          std::streamsize(f.size() * sizeof(double)));
  if (in.gcount() != std::streamsize(f.size() * sizeof(double)))
    throw IoError("load_field: short read from " + path);
  return f;
}

void render_image(const ScalarField& f, const std::string& path) {
  const int nx = f.grid.n[0], ny = f.grid.n[1];
  const int z = f.grid.dims == 3 ? f.grid.n[2] / 2 : 0;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("render_image: cannot open " + path);
  out << "P5\n" << nx << " " << ny << "\n255\n";
  std::vector<unsigned char> row(nx);
  for (int y = 0; y < ny; ++y) {
    for (int x = 0; x < nx; ++x) {
      double v = f[f.index(x, y, z)];
      v = std::fmin(1.0, std::fmax(-1.0, v));
      row[x] = static_cast<unsigned char>(std::lround((v + 1.0) * 127.5));
    }
    out.write(reinterpret_cast<const char*>(row.data()), nx);
  }
  if (!out) throw IoError("render_image: short write to " + path);
}

CsvWriter::CsvWriter(const std::string& path) : path_(path), out_(path) {
  if (!out_) throw IoError("csv: cannot open " + path_);
  out_ << "step,time,e_original,e_modified,radius,phi_min,phi_max,"
          "solver_iters,solver_residual\n";
}

void CsvWriter::write(const EnergyRecord& r) {
  char buf[512];
  char emod[64] = "";
  if (r.has_modified) std::snprintf(emod, sizeof emod, "%.17g", r.e_modified);
  std::snprintf(buf, sizeof buf,
                "%ld,%.17g,%.17g,%s,%.17g,%.17g,%.17g,%d,%.17g\n", r.step,
                r.time, r.e_original, emod, r.radius, r.phi_min, r.phi_max,
                r.solver_iters, r.solver_residual);
  out_ << buf;
  if (!out_) throw IoError("csv: write failed on " + path_);
}

void CsvWriter::comment(const std::string& line) {
  out_ << "# " << line << "\n";
  out_.flush();
  if (!out_) throw IoError("csv: write failed on " + path_);
}

} // namespace dendrite
