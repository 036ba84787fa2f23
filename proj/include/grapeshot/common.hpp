#ifndef GRAPESHOT_COMMON_HPP
#define GRAPESHOT_COMMON_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace grapeshot {

using Int = mpz_class;
using Rat = mpq_class;

// Errors surfaced through the CLI as exit code 2 (input) or 1 (verification).
struct GraphError : std::runtime_error {
    explicit GraphError(const std::string& m) : std::runtime_error(m) {}
};
struct NotAGrape : std::runtime_error {
    explicit NotAGrape(const std::string& m) : std::runtime_error(m) {}
};
struct NoEssentialVertex : std::runtime_error {
    explicit NoEssentialVertex(const std::string& m) : std::runtime_error(m) {}
};
struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& m) : std::out_of_range(m) {}
};
struct TorsionPresent : std::runtime_error {
    explicit TorsionPresent(const std::string& m) : std::runtime_error(m) {}
};
struct DegenerateGraph : std::runtime_error {
    explicit DegenerateGraph(const std::string& m) : std::runtime_error(m) {}
};

inline Int binomial(long n, long r) {
    if (r < 0 || n < 0 || r > n) return 0;
    Int out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(r));
    return out;
}

}  // namespace grapeshot

#endif
