#include "tunnel/snapshot.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace tunnel {

namespace {

constexpr std::array<char, 8> kMagic = {'T', 'D', 'S', 'E', 'S', 'N', 'A', 'P'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put_le(std::ostream& os, T value) {
  static_assert(sizeof(T) == 4 || sizeof(T) == 8);
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  U bits;
  std::memcpy(&bits, &value, sizeof(T));
  std::array<char, sizeof(T)> bytes;
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  os.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& is) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  std::array<unsigned char, sizeof(T)> bytes;
  if (!is.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) throw Error("read_snapshot: truncated file");
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<U>(bytes[i]) << (8 * i);
  T value;
  std::memcpy(&value, &bits, sizeof(T));
  return value;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, double t, const Wavefunction& psi) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("write_snapshot: cannot open " + path.string());
  os.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(os, kVersion);
  put_le<std::uint32_t>(os, 0);
  put_le<std::uint64_t>(os, static_cast<std::uint64_t>(psi.grid.size()));
  put_le<double>(os, psi.grid.x_min());
  put_le<double>(os, psi.grid.x_max());
  put_le<double>(os, psi.grid.dx());
  put_le<double>(os, t);
  for (Index i = 0; i < psi.amps.size(); ++i) {
    put_le<double>(os, psi.amps[i].real());
    put_le<double>(os, psi.amps[i].imag());
  }
  if (!os) throw Error("write_snapshot: write failed for " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("read_snapshot: cannot open " + path.string());
  std::array<char, 8> magic{};
  is.read(magic.data(), magic.size());
  if (magic != kMagic) throw Error("read_snapshot: bad magic in " + path.string());
  if (get_le<std::uint32_t>(is) != kVersion) throw Error("read_snapshot: unsupported version");
  (void)get_le<std::uint32_t>(is);
  const auto n = static_cast<Index>(get_le<std::uint64_t>(is));
  const double x_min = get_le<double>(is);
  const double x_max = get_le<double>(is);
  (void)get_le<double>(is);  // dx is implied by the box and n
  const double t = get_le<double>(is);
  ComplexVector amps(n);
  for (Index i = 0; i < n; ++i) {
    const double re = get_le<double>(is);
    const double im = get_le<double>(is);
    amps[i] = cplx(re, im);
  }
  return Snapshot{t, Wavefunction(Grid(x_min, x_max, n), std::move(amps))};
}

}  // namespace tunnel
