#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "thermowiener/domain.hpp"
#include "thermowiener/errors.hpp"
#include "thermowiener/numerics.hpp"

namespace thermowiener {

// File layout (whitespace separated, '#' starts a comment line):
//
//   MASK 1
//   N <space dim>
//   extents <n_1> ... <n_N> <n_t>
//   spacing <h_1> ... <h_N> <h_t>
//   origin  <o_1> ... <o_N> <o_t>
//   DATA
//   <prod(extents) characters 0/1, row-major, time index fastest>

MaskGrid::MaskGrid(int space_dim, std::vector<int> extents, std::vector<double> spacing,
                   std::vector<double> origin, std::vector<unsigned char> bits)
    : n_(space_dim),
      extents_(std::move(extents)),
      spacing_(std::move(spacing)),
      origin_(std::move(origin)),
      bits_(std::move(bits)) {
  if (n_ < 1 || n_ > kMaxSpaceDim) throw InputError("mask dimension must be in [1, 3]");
  const std::size_t axes = static_cast<std::size_t>(n_) + 1;
  if (extents_.size() != axes || spacing_.size() != axes || origin_.size() != axes)
    throw InputError("mask header needs N+1 extents, spacings and origins");
  std::size_t total = 1;
  for (std::size_t i = 0; i < axes; ++i) {
    if (extents_[i] < 1) throw InputError("mask extents must be positive");
    if (!(spacing_[i] > 0)) throw InputError("mask spacing must be positive");
    if (!std::isfinite(origin_[i])) throw InputError("mask origin must be finite");
    total *= static_cast<std::size_t>(extents_[i]);
  }
  if (bits_.size() != total) throw InputError("mask data length does not match extents");
}

MaskGrid MaskGrid::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open mask file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

MaskGrid MaskGrid::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line, header;
  std::ostringstream clean;
  while (std::getline(in, line)) {
    const auto pos = line.find('#');
    if (pos != std::string::npos) line.erase(pos);
    clean << line << '\n';
  }
  std::istringstream tok(clean.str());
  std::string word;
  int version = 0, n = 0;
  if (!(tok >> word >> version) || word != "MASK" || version != 1)
    throw InputError("mask file must start with 'MASK 1'");
  if (!(tok >> word >> n) || word != "N") throw InputError("mask file needs 'N <dim>'");
  if (n < 1 || n > kMaxSpaceDim) throw InputError("mask dimension must be in [1, 3]");
  const int axes = n + 1;
  std::vector<int> ext(axes);
  std::vector<double> sp(axes), org(axes);
  auto read_row = [&](const char* name, auto& out) {
    if (!(tok >> word) || word != name) throw InputError(std::string("mask file needs '") + name + "'");
    for (auto& v : out)
      if (!(tok >> v)) throw InputError(std::string("mask file has a short '") + name + "' row");
  };
  read_row("extents", ext);
  read_row("spacing", sp);
  read_row("origin", org);
  if (!(tok >> word) || word != "DATA") throw InputError("mask file needs 'DATA'");
  std::vector<unsigned char> bits;
  char ch;
  while (tok.get(ch)) {
    if (ch == '0' || ch == '1') bits.push_back(ch == '1');
    else if (!std::isspace(static_cast<unsigned char>(ch)))
      throw InputError("mask data may only contain 0 and 1");
  }
  return MaskGrid(n, ext, sp, org, bits);
}

std::string MaskGrid::serialize() const {
  std::ostringstream out;
  out << "MASK 1\nN " << n_ << "\nextents";
  for (int e : extents_) out << ' ' << e;
  out << "\nspacing";
  for (double h : spacing_) out << ' ' << format_real(h);
  out << "\norigin";
  for (double o : origin_) out << ' ' << format_real(o);
  out << "\nDATA\n";
  const int row = extents_.back();
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    out << (bits_[i] ? '1' : '0');
    if ((i + 1) % static_cast<std::size_t>(row) == 0) out << '\n';
  }
  return out.str();
}

bool MaskGrid::voxel(const std::vector<int>& index) const {
  std::size_t flat = 0;
  for (int a = 0; a <= n_; ++a) {
    if (index[a] < 0 || index[a] >= extents_[a]) return false;
    flat = flat * static_cast<std::size_t>(extents_[a]) + static_cast<std::size_t>(index[a]);
  }
  return bits_[flat] != 0;
}

bool MaskGrid::open_at(const SpacePoint& x, double t) const {
  if (x.dim != n_) throw InputError("mask lookup dimension mismatch");
  const int axes = n_ + 1;
  // Per axis: one candidate voxel in the interior of a cell, two on a face.
  std::vector<int> first(axes), count(axes);
  for (int a = 0; a < axes; ++a) {
    const double v = a < n_ ? x[a] : t;
    const double q = (v - origin_[a]) / spacing_[a];
    const double f = std::floor(q);
    if (q == f) {
      first[a] = static_cast<int>(f) - 1;
      count[a] = 2;
    } else {
      first[a] = static_cast<int>(f);
      count[a] = 1;
    }
  }
  std::vector<int> idx(axes);
  const int combos = 1 << axes;
  for (int code = 0; code < combos; ++code) {
    bool valid = true;
    for (int a = 0; a < axes; ++a) {
      const int bit = (code >> a) & 1;
      if (bit >= count[a]) {
        valid = false;
        break;
      }
      idx[a] = first[a] + bit;
    }
    if (valid && !voxel(idx)) return false;
  }
  return true;
}

}  // namespace thermowiener
