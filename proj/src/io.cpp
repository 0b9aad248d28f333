#include "fnls/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fnls::io {
namespace {

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void rename_over(const std::filesystem::path& tmp, const std::filesystem::path& path) {
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("failed to move " + tmp.string() + " to " + path.string());
  }
}

}  // namespace

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  rename_over(tmp, path);
}

void write_field(const SpectralField& f, const std::filesystem::path& path,
                 std::optional<double> alpha) {
  std::ostringstream out;
  out << "lambda = " << fmt17(f.spec.lambda) << "\n";
  out << "num_points = " << f.spec.num_points << "\n";
  if (alpha) out << "alpha = " << fmt17(*alpha) << "\n";
  for (int m : f.support_modes()) {
    Complex v = f.coeff_of_mode(m);
    out << m << ", " << fmt17(v.real()) << ", " << fmt17(v.imag()) << "\n";
  }
  write_text_atomic(path, out.str());
}

FieldFile read_field(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  double lambda = 0.0;
  int num_points = 0;
  std::optional<double> alpha;
  std::vector<std::pair<int, Complex>> modes;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq != std::string::npos && line.find(',') == std::string::npos) {
      std::string key = line.substr(0, eq);
      key.erase(key.find_last_not_of(" \t") + 1);
      double val = std::stod(line.substr(eq + 1));
      if (key == "lambda")
        lambda = val;
      else if (key == "num_points")
        num_points = static_cast<int>(val);
      else if (key == "alpha")
        alpha = val;
      else
        throw std::runtime_error("unknown field header key: " + key);
      continue;
    }
    std::istringstream row(line);
    int m;
    char comma;
    double re, im;
    if (!(row >> m >> comma >> re >> comma >> im))
      throw std::runtime_error("malformed field row: " + line);
    modes.emplace_back(m, Complex{re, im});
  }
  if (num_points == 0) throw std::runtime_error("field file missing num_points header");
  TorusSpec spec = make_torus(lambda, num_points);
  return FieldFile{synthesize_modes(spec, modes), alpha};
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << fmt17(row[i]) << (i + 1 < row.size() ? "," : "\n");
  }
  write_text_atomic(path, out.str());
}

}  // namespace fnls::io
