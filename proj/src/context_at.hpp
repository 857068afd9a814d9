#pragma once

#include <optional>

#include "pcc/elliptic.hpp"

namespace pcc::detail {

// ctx itself when it already sits at tau, otherwise a context at tau with
// ctx's truncation orders, stored in `slot`
inline const EllipticContext& context_at(Complex tau, const EllipticContext* ctx,
                                         std::optional<EllipticContext>& slot) {
    if (ctx && ctx->tau() == tau)
        return *ctx;
    slot.emplace(ctx ? ctx->at(tau) : EllipticContext(tau));
    return *slot;
}

} // namespace pcc::detail
