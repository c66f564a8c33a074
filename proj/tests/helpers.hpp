#pragma once

#include <string>
#include <utility>

#include "sympc/errors.hpp"

namespace testutil {

/// Kind of the Error a callable throws; "<none>" if it returns normally.
template <class Fn> std::string error_kind(Fn&& fn) {
    try {
        std::forward<Fn>(fn)();
    } catch (const sympc::Error& e) {
        return e.kind();
    }
    return "<none>";
}

} // namespace testutil
