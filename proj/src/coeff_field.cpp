#include "besovseq/coeff_field.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace besovseq {

namespace {

std::size_t entries_at(int l) { return l == 0 ? 1u : (std::size_t{1} << l); }

void check_level_sizes(const std::vector<std::vector<double>>& levels) {
  if (levels.empty()) {
    throw std::invalid_argument("CoeffField: at least the father level is required");
  }
  for (int l = 0; l < static_cast<int>(levels.size()); ++l) {
    if (levels[l].size() != entries_at(l)) {
      throw std::invalid_argument("CoeffField: level " + std::to_string(l) +
                                  " must hold " + std::to_string(entries_at(l)) +
                                  " entries, got " + std::to_string(levels[l].size()));
    }
    for (double v : levels[l]) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("CoeffField: non-finite entry at level " +
                                    std::to_string(l));
      }
    }
  }
}

}  // namespace

CoeffField::CoeffField(int max_level) {
  if (max_level < 0) {
    throw std::invalid_argument("CoeffField: max_level must be >= 0");
  }
  levels_.resize(max_level + 1);
  for (int l = 0; l <= max_level; ++l) {
    levels_[l].assign(entries_at(l), 0.0);
  }
}

CoeffField::CoeffField(std::vector<std::vector<double>> levels)
    : levels_(std::move(levels)) {
  check_level_sizes(levels_);
}

std::size_t CoeffField::size() const {
  return (std::size_t{1} << (max_level() + 1)) - 1;
}

const std::vector<double>& CoeffField::level(int l) const {
  if (l < 0 || l > max_level()) {
    throw std::out_of_range("CoeffField: level " + std::to_string(l) +
                            " out of range [0, " + std::to_string(max_level()) + "]");
  }
  return levels_[l];
}

std::vector<double>& CoeffField::level(int l) {
  if (l < 0 || l > max_level()) {
    throw std::out_of_range("CoeffField: level " + std::to_string(l) +
                            " out of range [0, " + std::to_string(max_level()) + "]");
  }
  return levels_[l];
}

CoeffField CoeffField::padded_to(int new_max_level) const {
  if (new_max_level < max_level()) {
    throw std::invalid_argument("padded_to: target level below current max_level");
  }
  auto levels = levels_;
  for (int l = max_level() + 1; l <= new_max_level; ++l) {
    levels.emplace_back(entries_at(l), 0.0);
  }
  return CoeffField(std::move(levels));
}

CoeffField project_levels(const CoeffField& c, int j) {
  if (j < 0 || j > c.max_level()) {
    throw std::out_of_range("project_levels: cutoff out of range");
  }
  auto levels = c.levels();
  for (int l = j + 1; l <= c.max_level(); ++l) {
    std::fill(levels[l].begin(), levels[l].end(), 0.0);
  }
  return CoeffField(std::move(levels));
}

std::vector<double> extract_level(const CoeffField& c, int l) {
  return c.level(l);
}

CoeffField field_difference(const CoeffField& a, const CoeffField& b) {
  const int L = std::max(a.max_level(), b.max_level());
  CoeffField out(L);
  for (int l = 0; l <= L; ++l) {
    auto& dst = out.level(l);
    if (l <= a.max_level()) {
      const auto& av = a.level(l);
      for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = av[k];
    }
    if (l <= b.max_level()) {
      const auto& bv = b.level(l);
      for (std::size_t k = 0; k < dst.size(); ++k) dst[k] -= bv[k];
    }
  }
  return out;
}

CoeffField field_scaled(const CoeffField& c, double lambda) {
  auto levels = c.levels();
  for (auto& lev : levels) {
    for (double& v : lev) v *= lambda;
  }
  return CoeffField(std::move(levels));
}

// --- serialization ----------------------------------------------------------

std::string to_json_string(const CoeffField& c, int indent) {
  nlohmann::json j;
  j["L"] = c.max_level();
  j["levels"] = c.levels();
  return j.dump(indent);
}

CoeffField coeff_field_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  auto levels = j.at("levels").get<std::vector<std::vector<double>>>();
  CoeffField out{std::move(levels)};
  if (j.at("L").get<int>() != out.max_level()) {
    throw std::invalid_argument("coeff_field_from_json: L field disagrees with levels");
  }
  return out;
}

namespace {

constexpr char kMagic[4] = {'B', 'C', 'F', '1'};

void put_u32_le(std::ostream& os, std::uint32_t v) {
  unsigned char buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(buf), 4);
}

std::uint32_t get_u32_le(std::istream& is) {
  unsigned char buf[4];
  is.read(reinterpret_cast<char*>(buf), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[i]) << (8 * i);
  return v;
}

void put_f64_le(std::ostream& os, double x) {
  std::uint64_t bits;
  std::memcpy(&bits, &x, 8);
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(buf), 8);
}

double get_f64_le(std::istream& is) {
  unsigned char buf[8];
  is.read(reinterpret_cast<char*>(buf), 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  double x;
  std::memcpy(&x, &bits, 8);
  return x;
}

}  // namespace

void write_binary(const CoeffField& c, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_binary: cannot open " + path);
  os.write(kMagic, 4);
  put_u32_le(os, static_cast<std::uint32_t>(c.max_level()));
  for (int i = 0; i < 8; ++i) os.put('\0');  // reserved, header is 16 bytes
  for (const auto& lev : c.levels()) {
    for (double v : lev) put_f64_le(os, v);
  }
  if (!os) throw std::runtime_error("write_binary: write failed for " + path);
}

CoeffField read_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_binary: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("read_binary: bad magic in " + path);
  }
  const int L = static_cast<int>(get_u32_le(is));
  is.ignore(8);
  CoeffField out(L);
  for (int l = 0; l <= L; ++l) {
    for (double& v : out.level(l)) v = get_f64_le(is);
  }
  if (!is) throw std::runtime_error("read_binary: truncated file " + path);
  return out;
}

namespace {
bool has_suffix(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}
}  // namespace

void save_field(const CoeffField& c, const std::string& path) {
  if (has_suffix(path, ".bcf")) {
    write_binary(c, path);
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_field: cannot open " + path);
  os << to_json_string(c) << '\n';
  if (!os) throw std::runtime_error("save_field: write failed for " + path);
}

CoeffField load_field(const std::string& path) {
  if (has_suffix(path, ".bcf")) return read_binary(path);
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_field: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return coeff_field_from_json(text);
}

}  // namespace besovseq
