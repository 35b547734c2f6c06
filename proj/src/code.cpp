#include "pmrc/code.hpp"

#include <string>

namespace pmrc {

int RegeneratingCode::stripes_of(std::span<const uint32_t> message) const {
    const int b = message_len();
    if (message.empty() || message.size() % static_cast<size_t>(b) != 0)
        throw ShortMessage("message length must be a positive multiple of " + std::to_string(b));
    return static_cast<int>(message.size() / static_cast<size_t>(b));
}

std::vector<Share> RegeneratingCode::encode(std::span<const uint32_t> message,
                                            RandomSource& rng) const {
    const int stripes = stripes_of(message);
    FeVec randomness(static_cast<size_t>(stripes) * static_cast<size_t>(randomness_len()));
    for (auto& r : randomness) r = rng.draw();
    return encode(message, randomness);
}

} // namespace pmrc
