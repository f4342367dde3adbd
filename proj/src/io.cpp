#include "wavexp/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace wavexp::io {

namespace {

// FIPS 180-4 SHA-256, state-machine-free single-shot variant.
struct Sha256 {
  static constexpr std::array<uint32_t, 64> k = {
      0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
      0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
      0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
      0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
      0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
      0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
      0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
      0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
      0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
      0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
      0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

  std::array<uint32_t, 8> h = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                               0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};

  static uint32_t rotr(uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

  void block(const unsigned char* p) {
    uint32_t w[64];
    for (int i = 0; i < 16; ++i)
      w[i] = (uint32_t(p[4 * i]) << 24) | (uint32_t(p[4 * i + 1]) << 16) |
             (uint32_t(p[4 * i + 2]) << 8) | uint32_t(p[4 * i + 3]);
    for (int i = 16; i < 64; ++i) {
      const uint32_t s0 =
          rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      const uint32_t s1 =
          rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5],
             g = h[6], hh = h[7];
    for (int i = 0; i < 64; ++i) {
      const uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      const uint32_t ch = (e & f) ^ (~e & g);
      const uint32_t t1 = hh + s1 + ch + k[i] + w[i];
      const uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      const uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
      const uint32_t t2 = s0 + maj;
      hh = g;
      g = f;
      f = e;
      e = d + t1;
      d = c;
      c = b;
      b = a;
      a = t1 + t2;
    }
    h[0] += a;
    h[1] += b;
    h[2] += c;
    h[3] += d;
    h[4] += e;
    h[5] += f;
    h[6] += g;
    h[7] += hh;
  }
};

}  // namespace

std::string sha256_hex(const std::string& data) {
  Sha256 ctx;
  const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
  size_t off = 0;
  for (; off + 64 <= data.size(); off += 64) ctx.block(bytes + off);

  unsigned char tail[128] = {0};
  const size_t rem = data.size() - off;
  std::memcpy(tail, bytes + off, rem);
  tail[rem] = 0x80;
  const size_t pad = (rem < 56) ? 64 : 128;
  const uint64_t bits = static_cast<uint64_t>(data.size()) * 8;
  for (int i = 0; i < 8; ++i)
    tail[pad - 1 - i] = static_cast<unsigned char>(bits >> (8 * i));
  ctx.block(tail);
  if (pad == 128) ctx.block(tail + 64);

  std::ostringstream out;
  for (uint32_t word : ctx.h) {
    char buf[9];
    std::snprintf(buf, sizeof(buf), "%08x", word);
    out << buf;
  }
  return out.str();
}

void atomic_write(const std::filesystem::path& path,
                  const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.parent_path().empty() ? fs::path(".")
                                                  : path.parent_path();
  fs::create_directories(dir);
  const fs::path tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  // trim to the shortest representation that round-trips
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[64];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, x);
    if (std::strtod(shorter, nullptr) == x) return shorter;
  }
  return buf;
}

std::string CsvTable::to_string() const {
  std::ostringstream out;
  for (size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 == header.size() ? "\n" : ",");
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("csv row width does not match header");
    for (size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 == row.size() ? "\n" : ",");
  }
  return out.str();
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != t.header.size())
        throw std::invalid_argument("csv schema mismatch: ragged row");
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

namespace {

constexpr int kW = 640, kH = 420;
constexpr double kML = 70, kMR = 20, kMT = 30, kMB = 50;

int column(const CsvTable& t, const std::string& name) {
  for (size_t i = 0; i < t.header.size(); ++i)
    if (t.header[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("csv schema mismatch: missing column " + name);
}

std::string svg_open(const std::string& title) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH
      << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kW / 2 << "\" y=\"20\" text-anchor=\"middle\" "
         "font-family=\"monospace\" font-size=\"14\">"
      << title << "</text>\n"
      << "<rect x=\"" << kML << "\" y=\"" << kMT << "\" width=\""
      << kW - kML - kMR << "\" height=\"" << kH - kMT - kMB
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  return out.str();
}

std::string svg_text(double x, double y, const std::string& s,
                     const std::string& anchor = "middle") {
  std::ostringstream out;
  out << "<text x=\"" << format_double(x) << "\" y=\"" << format_double(y)
      << "\" text-anchor=\"" << anchor
      << "\" font-family=\"monospace\" font-size=\"11\">" << s << "</text>\n";
  return out.str();
}

double map_x(double v, double lo, double hi) {
  if (hi <= lo) return kML + 0.5 * (kW - kML - kMR);
  return kML + (v - lo) / (hi - lo) * (kW - kML - kMR);
}

double map_y(double v, double lo, double hi) {
  if (hi <= lo) return kMT + 0.5 * (kH - kMT - kMB);
  return kH - kMB - (v - lo) / (hi - lo) * (kH - kMT - kMB);
}

}  // namespace

std::string render_mse_svg(const CsvTable& t) {
  std::ostringstream out;
  out << svg_open("max pointwise MSE by truncation scheme (log scale)");
  if (!t.rows.empty()) {
    const int cn = column(t, "n"), ck = column(t, "k"), cm = column(t, "mse");
    // per-scheme maximum over t, in row order
    std::vector<std::pair<std::string, double>> series;
    for (const auto& r : t.rows) {
      const std::string label = r[static_cast<size_t>(cn)] + "/" +
                                r[static_cast<size_t>(ck)];
      const double v = std::strtod(r[static_cast<size_t>(cm)].c_str(), nullptr);
      if (!series.empty() && series.back().first == label)
        series.back().second = std::max(series.back().second, v);
      else
        series.emplace_back(label, v);
    }
    double lo = 1e300, hi = -1e300;
    for (auto& [label, v] : series) {
      const double lv = std::log10(std::max(v, 1e-300));
      lo = std::min(lo, lv);
      hi = std::max(hi, lv);
    }
    std::ostringstream poly;
    for (size_t i = 0; i < series.size(); ++i) {
      const double x = map_x(static_cast<double>(i), 0.0,
                             static_cast<double>(series.size() - 1));
      const double y =
          map_y(std::log10(std::max(series[i].second, 1e-300)), lo - 0.5,
                hi + 0.5);
      poly << format_double(x) << "," << format_double(y) << " ";
      out << "<circle cx=\"" << format_double(x) << "\" cy=\""
          << format_double(y) << "\" r=\"3\" fill=\"black\"/>\n";
      out << svg_text(x, kH - kMB + 16, series[i].first);
    }
    if (series.size() > 1)
      out << "<polyline points=\"" << poly.str()
          << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << svg_text(kML - 8, kMT + 10, "log10 mse", "end");
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_sup_prob_svg(const CsvTable& t) {
  std::ostringstream out;
  out << svg_open("sup-norm exceedance probability by scheme");
  if (!t.rows.empty()) {
    const int cn = column(t, "n"), ck = column(t, "k");
    const int cp = column(t, "p_hat"), clo = column(t, "ci_lo"),
              chi = column(t, "ci_hi");
    const auto m = t.rows.size();
    std::ostringstream poly;
    for (size_t i = 0; i < m; ++i) {
      const auto& r = t.rows[i];
      const double x = map_x(static_cast<double>(i), 0.0,
                             static_cast<double>(m > 1 ? m - 1 : 1));
      const double p = std::strtod(r[static_cast<size_t>(cp)].c_str(), nullptr);
      const double lo =
          std::strtod(r[static_cast<size_t>(clo)].c_str(), nullptr);
      const double hi =
          std::strtod(r[static_cast<size_t>(chi)].c_str(), nullptr);
      const double y = map_y(p, 0.0, 1.0);
      out << "<line x1=\"" << format_double(x) << "\" y1=\""
          << format_double(map_y(lo, 0.0, 1.0)) << "\" x2=\""
          << format_double(x) << "\" y2=\""
          << format_double(map_y(hi, 0.0, 1.0))
          << "\" stroke=\"black\"/>\n";
      out << "<circle cx=\"" << format_double(x) << "\" cy=\""
          << format_double(y) << "\" r=\"3\" fill=\"black\"/>\n";
      poly << format_double(x) << "," << format_double(y) << " ";
      out << svg_text(x, kH - kMB + 16,
                      r[static_cast<size_t>(cn)] + "/" +
                          r[static_cast<size_t>(ck)]);
    }
    if (m > 1)
      out << "<polyline points=\"" << poly.str()
          << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << svg_text(kML - 8, kMT + 10, "p_hat", "end");
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_modulus_svg(const CsvTable& t) {
  std::ostringstream out;
  out << svg_open("modulus bound margin vs |t-s|");
  if (!t.rows.empty()) {
    const int ct = column(t, "t"), cs = column(t, "s"),
              cm = column(t, "margin");
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : t.rows) {
      const double h =
          std::abs(std::strtod(r[static_cast<size_t>(ct)].c_str(), nullptr) -
                   std::strtod(r[static_cast<size_t>(cs)].c_str(), nullptr));
      const double margin =
          std::strtod(r[static_cast<size_t>(cm)].c_str(), nullptr);
      if (h <= 0.0 || !std::isfinite(margin)) continue;
      const double x = std::log10(h), y = std::log10(std::max(margin, 1e-300));
      pts.emplace_back(x, y);
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
    for (const auto& [x, y] : pts)
      out << "<circle cx=\"" << format_double(map_x(x, xlo, xhi)) << "\" cy=\""
          << format_double(map_y(y, std::min(ylo, -0.1), yhi + 0.2))
          << "\" r=\"2\" fill=\"black\"/>\n";
    if (!pts.empty()) {
      const double y1 = map_y(0.0, std::min(ylo, -0.1), yhi + 0.2);
      out << "<line x1=\"" << kML << "\" y1=\"" << format_double(y1)
          << "\" x2=\"" << kW - kMR << "\" y2=\"" << format_double(y1)
          << "\" stroke=\"red\" stroke-dasharray=\"4,3\"/>\n";
      out << svg_text(kW - kMR - 4, y1 - 4, "margin = 1", "end");
    }
    out << svg_text(kML - 8, kMT + 10, "log10 margin", "end");
    out << svg_text((kML + kW - kMR) / 2.0, kH - 12, "log10 |t-s|");
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace wavexp::io
