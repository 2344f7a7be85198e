#include "heightlab/real.hpp"

#include <cstdio>
#include <vector>

namespace heightlab {

std::string Real::str(int sig_digits) const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.*Rg", sig_digits, v_) < 0) return "nan";
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Real log_rat(const Rat& x, mpfr_prec_t prec) {
    Real t = Real::of(x, prec + kGuardBits);
    Real r(prec + kGuardBits);
    mpfr_log(r.raw(), t.raw(), MPFR_RNDN);
    return r;
}

Real log_int(const Int& x, mpfr_prec_t prec) {
    Real t = Real::of(x, prec + kGuardBits);
    Real r(prec + kGuardBits);
    mpfr_log(r.raw(), t.raw(), MPFR_RNDN);
    return r;
}

} // namespace heightlab
