#pragma once

namespace sasoca {

inline constexpr const char* kVersion = "0.1.0";

// Recorded in every manifest and report so downstream tooling can detect a
// convention change. Neighborhood offsets enumerate the (2r+1)^d cube in
// raster order with the last dimension fastest; gate inputs form table
// indices first-listed = most significant; gate outputs take table bits
// most significant first.
inline constexpr const char* kOrderingConvention =
    "neighbors=raster-last-dim-fastest;gate-io=msb-first";

}  // namespace sasoca
