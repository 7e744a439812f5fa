#include "fbq/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "fbq/errors.hpp"

namespace fbq {

namespace {

static_assert(sizeof(double) == 8, "snapshot format expects 8-byte IEEE doubles");

template <typename T>
T byteswap_if_big(T v) {
    if constexpr (std::endian::native == std::endian::little) {
        return v;
    } else {
        unsigned char* b = reinterpret_cast<unsigned char*>(&v);
        for (size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
        return v;
    }
}

void put_u32(std::ostream& os, std::uint32_t v) {
    v = byteswap_if_big(v);
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& os, double x) {
    std::uint64_t v;
    std::memcpy(&v, &x, sizeof v);
    v = byteswap_if_big(v);
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& is) {
    std::uint32_t v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
        throw FormatError("snapshot: truncated header");
    return byteswap_if_big(v);
}

double get_f64(std::istream& is) {
    std::uint64_t v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
        throw FormatError("snapshot: truncated data");
    v = byteswap_if_big(v);
    double x;
    std::memcpy(&x, &v, sizeof x);
    return x;
}

void put_field(std::ostream& os, const SpectralField& f) {
    for (const auto& c : f.coeffs) {
        put_f64(os, c.real());
        put_f64(os, c.imag());
    }
}

void get_field(std::istream& is, SpectralField& f) {
    for (auto& c : f.coeffs) {
        const double re = get_f64(is);
        const double im = get_f64(is);
        c = {re, im};
    }
}

constexpr char kMagic[4] = {'F', 'B', 'Q', '1'};

} // namespace

void write_snapshot(const State& s, const PhysParams& p, const std::string& path) {
    if (!(s.theta_hat.grid == s.omega_hat.grid))
        throw std::invalid_argument("write_snapshot: theta/omega grid mismatch");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw FormatError("write_snapshot: cannot open '" + path + "'");
    os.write(kMagic, 4);
    put_u32(os, static_cast<std::uint32_t>(s.theta_hat.grid.n));
    put_f64(os, s.theta_hat.grid.l);
    put_f64(os, p.nu);
    put_f64(os, p.kappa);
    put_f64(os, p.alpha);
    put_f64(os, p.beta);
    put_f64(os, s.t);
    put_field(os, s.theta_hat);
    put_field(os, s.omega_hat);
    if (!os) throw FormatError("write_snapshot: I/O failure writing '" + path + "'");
}

std::pair<State, PhysParams> read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("read_snapshot: cannot open '" + path + "'");
    char magic[4] = {};
    if (!is.read(magic, 4)) throw FormatError("read_snapshot: truncated magic");
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw FormatError(std::string("read_snapshot: bad magic '") + std::string(magic, 4) +
                          "' (expected FBQ1)");
    const std::uint32_t n = get_u32(is);
    const double l = get_f64(is);
    if (n < 8 || n % 2 != 0 || n > (1u << 16) || !(l > 0.0))
        throw FormatError("read_snapshot: inconsistent header (n = " + std::to_string(n) +
                          ", l = " + std::to_string(l) + ")");
    PhysParams p;
    p.nu = get_f64(is);
    p.kappa = get_f64(is);
    p.alpha = get_f64(is);
    p.beta = get_f64(is);
    State s;
    s.t = get_f64(is);
    const Grid g = make_grid(static_cast<int>(n), l);
    s.theta_hat = SpectralField(g);
    s.omega_hat = SpectralField(g);
    get_field(is, s.theta_hat);
    get_field(is, s.omega_hat);
    char extra;
    if (is.read(&extra, 1)) throw FormatError("read_snapshot: trailing bytes after state");
    return {std::move(s), std::move(p)};
}

} // namespace fbq
