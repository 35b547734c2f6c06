#include "pmrc/factory.hpp"

namespace pmrc {

std::shared_ptr<RegeneratingCode> make_code(io::Regime regime, int n, int k, int d, int beta,
                                            int ell, int m, uint32_t field) {
    PrimeField f(field);
    if (regime == io::Regime::mbr) {
        const MbrParams p = mbr_derive(n, k, d, beta, ell, m);
        return std::make_shared<MbrCode>(p, EncodingMatrix::vandermonde(f, n, d));
    }
    const MsrParams p = msr_derive(n, k, d, beta, ell, m);
    return std::make_shared<MsrCode>(
        p, EncodingMatrix::vandermonde(f, p.base_n(), p.base_d(), p.alpha_unit()));
}

std::shared_ptr<RegeneratingCode> make_code(const io::ShareFileHeader& h) {
    return make_code(h.regime, h.n, h.k, h.d, h.beta, h.ell, h.m, h.modulus);
}

} // namespace pmrc
