#pragma once

namespace trimcache::detail {

// Exact products of two int64 values.
__extension__ using Int128 = __int128;

}  // namespace trimcache::detail
