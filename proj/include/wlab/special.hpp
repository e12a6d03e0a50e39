#ifndef WLAB_SPECIAL_HPP
#define WLAB_SPECIAL_HPP

namespace wlab {

/// Laguerre polynomial L_n(x) by the three-term recurrence
/// (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}.
double laguerre(int n, double x);

/// Physicists' Hermite polynomial H_n(x) by the recurrence
/// H_{k+1} = 2x H_k - 2k H_{k-1}.
double hermite(int n, double x);

}  // namespace wlab

#endif  // WLAB_SPECIAL_HPP
