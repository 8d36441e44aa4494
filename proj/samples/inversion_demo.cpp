// Fourier transform and inversion of a random matrix-valued function on S3,
// then a dilation of a positive definite function built from it.

#include <iostream>

#include "ncf/plancherel.hpp"
#include "ncf/posdef.hpp"
#include "ncf/random.hpp"

int main() {
  using namespace ncf;
  Rng rng(2024);
  const GroupPtr s3 = symmetric(3);

  const OpValFn a = random_fn(s3, 2, rng);
  const OpValFn ahat = fourier_transform(a);
  const Inversion inv = invert(ahat);
  std::cout << "S3, k = 2\n";
  std::cout << "  ||sum_t a^(t) (x) lambda_t - lambda(a)|| = "
            << (inv.x.matrix() - left_regular(a).matrix()).norm() << "\n";

  // a^* * a is positive definite; dilate it.
  const OpValFn f = convolve(involute(a), a);
  const Dilation d = naimark_dilate(f);
  std::cout << "  f = a^* * a: dilation rank " << d.dim << ", reconstruction residual "
            << d.residuals.reconstruction << "\n";
  for (std::size_t t = 0; t < s3->order(); ++t)
    std::cout << "  f(" << s3->label(t) << ")[0,0] = " << f[t](0, 0) << "\n";
}
