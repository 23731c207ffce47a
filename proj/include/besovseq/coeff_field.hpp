#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace besovseq {

//! Triangular array of wavelet-type coefficients in sequence space.
//!
//! Level 0 holds the single father coefficient; level l holds 2^l detail
//! coefficients. A field with max_level L therefore stores 2^(L+1) - 1
//! values. Fields are immutable after construction in the sense that all
//! library operations take them by const reference and return new fields.
class CoeffField {
public:
  CoeffField() : levels_(1, std::vector<double>(1, 0.0)) {}

  //! Zero field up to max_level (inclusive).
  explicit CoeffField(int max_level);

  //! Adopt a ragged array; level l must hold exactly 2^l finite entries.
  explicit CoeffField(std::vector<std::vector<double>> levels);

  int max_level() const { return static_cast<int>(levels_.size()) - 1; }
  std::size_t size() const;

  const std::vector<double>& level(int l) const;
  std::vector<double>& level(int l);
  const std::vector<std::vector<double>>& levels() const { return levels_; }

  //! Same field with zero levels appended up to new_max_level.
  CoeffField padded_to(int new_max_level) const;

  bool operator==(const CoeffField& other) const = default;

private:
  std::vector<std::vector<double>> levels_;
};

//! Zero every level above j (keeps max_level).
CoeffField project_levels(const CoeffField& c, int j);

//! Copy of the level-l slice.
std::vector<double> extract_level(const CoeffField& c, int l);

//! a - b, entries aligned by level, shorter field zero-padded.
CoeffField field_difference(const CoeffField& a, const CoeffField& b);

//! c scaled by lambda.
CoeffField field_scaled(const CoeffField& c, double lambda);

// --- serialization ---------------------------------------------------------

//! Flat JSON text {"L": .., "levels": [[..], ..]}.
std::string to_json_string(const CoeffField& c, int indent = -1);
CoeffField coeff_field_from_json(const std::string& text);

//! Binary dump: 16-byte header (magic "BCF1", u32 L little-endian, 8 reserved
//! bytes), then all coefficients level by level as little-endian float64.
void write_binary(const CoeffField& c, const std::string& path);
CoeffField read_binary(const std::string& path);

//! Dispatch on extension: ".bcf" binary, anything else JSON.
void save_field(const CoeffField& c, const std::string& path);
CoeffField load_field(const std::string& path);

}  // namespace besovseq
