#pragma once

#include <memory>

#include "pmrc/mbr.hpp"
#include "pmrc/msr.hpp"
#include "pmrc/share_io.hpp"

namespace pmrc {

// Standard deterministic construction: the encoding matrix is the
// ascending-scan Vandermonde (with the alpha-distinct-powers constraint in
// the MSR regime), so encodings are reproducible byte for byte.
std::shared_ptr<RegeneratingCode> make_code(io::Regime regime, int n, int k, int d, int beta,
                                            int ell, int m, uint32_t field);

std::shared_ptr<RegeneratingCode> make_code(const io::ShareFileHeader& header);

} // namespace pmrc
