#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace tcw {

using BigInt = boost::multiprecision::cpp_int;

// Error taxonomy shared by all modules. Every throw site uses one of these
// so callers (and the CLI) can map failures to exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPrimeP : Error { using Error::Error; };
struct NonPrimitiveModulus : Error { using Error::Error; };
struct NotSymmetric : Error { using Error::Error; };
struct BadRank : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct BadParams : Error { using Error::Error; };
struct InexactDivision : Error { using Error::Error; };
struct NonRationalMoment : Error { using Error::Error; };
struct ZeroCoefficient : Error { using Error::Error; };
struct ArityMismatch : Error { using Error::Error; };

// q^e for small bases; overflow-checked against uint64.
inline std::uint64_t upow(std::uint64_t base, unsigned e) {
    std::uint64_t r = 1;
    while (e--) {
        if (base != 0 && r > UINT64_MAX / base)
            throw TooLarge("integer power exceeds 64 bits");
        r *= base;
    }
    return r;
}

inline BigInt bpow(const BigInt& base, unsigned e) {
    BigInt r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Division that must be exact; inexactness always signals a transcription or
// classification bug, never a rounding situation.
inline BigInt exact_div(const BigInt& a, const BigInt& b, const char* what = "exact_div") {
    if (b == 0) throw InexactDivision(std::string(what) + ": division by zero");
    BigInt q = a / b;
    if (q * b != a)
        throw InexactDivision(std::string(what) + ": " + a.str() + " not divisible by " + b.str());
    return q;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic uniform sampler. mt19937_64 is fully specified by the
// standard; the rejection loop avoids the implementation-defined
// std::uniform_int_distribution so streams are reproducible everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // uniform on [0, n)
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw BadParams("Rng::below(0)");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % n;
    }

  private:
    std::mt19937_64 eng_;
};

// Stable derivation of per-stream seeds from one master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
}

}  // namespace tcw
