#include "scatterlab/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace scatterlab {

namespace {

void put_u32(std::ofstream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), 4);
}

void put_f64(std::ofstream& out, double v) {
  out.write(reinterpret_cast<const char*>(&v), 8);
}

std::uint32_t get_u32(std::ifstream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), 4);
  return v;
}

double get_f64(std::ifstream& in) {
  double v = 0;
  in.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

}  // namespace

void write_frame(const std::string& path, const WaveFunction& w) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write("NSLF", 4);
  put_u32(out, 1);
  put_u32(out, static_cast<std::uint32_t>(w.grid.dim));
  put_u32(out, static_cast<std::uint32_t>(w.grid.n));
  put_f64(out, w.grid.length);
  put_f64(out, w.t);
  for (const auto& z : w.psi) {
    put_f64(out, z.real());
    put_f64(out, z.imag());
  }
  if (!out) throw std::runtime_error("short write to " + path);
}

WaveFunction read_frame(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  char magic[4];
  in.read(magic, 4);
  if (std::memcmp(magic, "NSLF", 4) != 0)
    throw std::runtime_error(path + ": not a frame file");
  std::uint32_t version = get_u32(in);
  if (version != 1) throw std::runtime_error(path + ": unsupported version");
  WaveFunction w;
  w.grid.dim = static_cast<int>(get_u32(in));
  w.grid.n = static_cast<int>(get_u32(in));
  w.grid.length = get_f64(in);
  w.t = get_f64(in);
  if (w.grid.dim < 1 || w.grid.dim > 3 || w.grid.n < 1)
    throw std::runtime_error(path + ": bad header");
  w.psi.resize(w.grid.size());
  for (auto& z : w.psi) {
    double re = get_f64(in);
    double im = get_f64(in);
    z = cplx(re, im);
  }
  if (!in) throw std::runtime_error(path + ": truncated");
  return w;
}

void write_manifest(const std::string& path, const std::vector<FrameRecord>& frames) {
  nlohmann::ordered_json j;
  j["frames"] = nlohmann::ordered_json::array();
  for (const auto& f : frames) {
    nlohmann::ordered_json o;
    o["index"] = f.index;
    o["file"] = f.file;
    o["t"] = f.t;
    j["frames"].push_back(std::move(o));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

void write_ensemble_csv(const std::string& path, const PathEnsemble& e) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "path_id,sample_index,t";
  for (int a = 0; a < e.dim; ++a) out << ",x" << (a + 1);
  out << '\n';
  char buf[40];
  for (int p = 0; p < e.n_paths; ++p) {
    for (std::size_t s = 0; s < e.n_samples(); ++s) {
      out << p << ',' << s;
      std::snprintf(buf, sizeof buf, ",%.17g", e.times[s]);
      out << buf;
      const double* x = e.sample(p, s);
      for (int a = 0; a < e.dim; ++a) {
        std::snprintf(buf, sizeof buf, ",%.17g", x[a]);
        out << buf;
      }
      out << '\n';
    }
  }
}

void write_ensemble_binary(const std::string& path, const PathEnsemble& e) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write("NSLE", 4);
  put_u32(out, 1);
  put_u32(out, static_cast<std::uint32_t>(e.dim));
  put_u32(out, static_cast<std::uint32_t>(e.n_paths));
  put_u32(out, static_cast<std::uint32_t>(e.n_samples()));
  put_f64(out, e.t0);
  for (double t : e.times) put_f64(out, t);
  // File layout is [path][sample][axis]; memory is [sample][path][axis].
  for (int p = 0; p < e.n_paths; ++p)
    for (std::size_t s = 0; s < e.n_samples(); ++s)
      out.write(reinterpret_cast<const char*>(e.sample(p, s)),
                static_cast<std::streamsize>(sizeof(double) * e.dim));
  out.write(reinterpret_cast<const char*>(e.frozen.data()),
            static_cast<std::streamsize>(e.frozen.size()));
  if (!out) throw std::runtime_error("short write to " + path);
}

PathEnsemble read_ensemble_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  char magic[4];
  in.read(magic, 4);
  if (std::memcmp(magic, "NSLE", 4) != 0)
    throw std::runtime_error(path + ": not an ensemble file");
  std::uint32_t version = get_u32(in);
  if (version != 1) throw std::runtime_error(path + ": unsupported version");
  PathEnsemble e;
  e.dim = static_cast<int>(get_u32(in));
  e.n_paths = static_cast<int>(get_u32(in));
  std::uint32_t n_samples = get_u32(in);
  e.t0 = get_f64(in);
  if (e.dim < 1 || e.dim > 3 || e.n_paths < 1 || n_samples < 1)
    throw std::runtime_error(path + ": bad header");
  e.times.resize(n_samples);
  for (auto& t : e.times) t = get_f64(in);
  e.pos.resize(static_cast<std::size_t>(n_samples) * e.n_paths * e.dim);
  for (std::uint32_t p = 0; p < static_cast<std::uint32_t>(e.n_paths); ++p)
    for (std::uint32_t s = 0; s < n_samples; ++s) {
      double* dst = &e.pos[(static_cast<std::size_t>(s) * e.n_paths + p) * e.dim];
      in.read(reinterpret_cast<char*>(dst),
              static_cast<std::streamsize>(sizeof(double) * e.dim));
    }
  e.frozen.resize(e.n_paths);
  in.read(reinterpret_cast<char*>(e.frozen.data()),
          static_cast<std::streamsize>(e.frozen.size()));
  if (!in) throw std::runtime_error(path + ": truncated");
  // Restore the cursor state implied by the stored samples.
  e.cur.assign(e.pos.end() - static_cast<std::size_t>(e.n_paths) * e.dim, e.pos.end());
  if (n_samples >= 2) {
    e.dt_step = e.times[1] - e.times[0];
    e.sample_stride = 1;
    e.cur_step = static_cast<long>(n_samples) - 1;
  }
  return e;
}

bool make_directories(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  return !ec;
}

}  // namespace scatterlab
