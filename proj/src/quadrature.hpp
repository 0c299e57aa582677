#pragma once

namespace axisym::detail {

// 6-point Gauss-Legendre rule on [-1, 1].
inline constexpr int kGaussPoints = 6;
inline constexpr double kGaussX[6] = {
    -0.9324695142031520278123016, -0.6612093864662645136613996,
    -0.2386191860831969086305017, 0.2386191860831969086305017,
    0.6612093864662645136613996,  0.9324695142031520278123016};
inline constexpr double kGaussW[6] = {
    0.1713244923791703450402961, 0.3607615730481386075698335,
    0.4679139345726910473898703, 0.4679139345726910473898703,
    0.3607615730481386075698335, 0.1713244923791703450402961};

}  // namespace axisym::detail
