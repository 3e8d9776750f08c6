//! Overflow-safe hyperbolic summands of the perfect-mirror thermal series
//! and the Hurwitz zeta function used to close their power-law tails.
//!
//! Each summand mixes inverse powers of `x` with `coth x` and `csch^2 x`.
//! For `x < 1` the leading powers cancel analytically and the summand is
//! taken from its even Taylor series; otherwise `coth` and `csch^2` are
//! built from `q = exp(-2x)`, which never overflows.

#![allow(clippy::excessive_precision)]

use crate::num::Real;

// Taylor coefficients in powers of x^2, constant term first.
const FT_TAYLOR: [f64; 18] = [
    6.666_666_666_666_666_7e-2,
    -2.116_402_116_402_116_4e-2,
    4.444_444_444_444_444_4e-3,
    -7.696_007_696_007_696_0e-4,
    1.190_422_354_443_518_5e-4,
    -1.710_223_932_446_154_7e-5,
    2.332_533_922_947_866_3e-6,
    -3.061_067_126_286_023_0e-7,
    3.899_680_855_985_263_3e-8,
    -4.852_350_845_790_551_1e-9,
    5.923_161_825_415_695_6e-10,
    -7.116_305_220_070_096_3e-11,
    8.436_079_781_991_004_9e-12,
    -9.886_893_335_848_447_7e-13,
    1.147_326_494_100_501_5e-13,
    -1.319_982_722_320_458_7e-14,
    1.507_132_879_265_677_7e-15,
    -1.709_263_672_208_230_7e-16,
];

const ET_TAYLOR: [f64; 18] = [
    4.444_444_444_444_444_4e-2,
    -8.465_608_465_608_465_6e-3,
    1.269_841_269_841_269_8e-3,
    -1.710_223_932_446_154_7e-4,
    2.164_404_280_806_397_2e-5,
    -2.631_113_742_224_853_3e-6,
    3.110_045_230_597_155_1e-7,
    -3.601_255_442_689_438_9e-8,
    4.104_927_216_826_592_9e-9,
    -4.621_286_519_800_524_8e-10,
    5.150_575_500_361_474_5e-11,
    -5.693_044_176_056_077_0e-12,
    6.248_947_986_660_003_6e-13,
    -6.818_547_128_171_343_2e-14,
    7.402_106_413_551_622_4e-15,
    -7.999_895_286_790_658_9e-16,
    8.612_187_881_518_158_4e-17,
    -9.239_263_093_017_463_2e-18,
];

const PF_TAYLOR: [f64; 18] = [
    -3.555_555_555_555_555_6e-1,
    2.031_746_031_746_031_7e-1,
    -6.095_238_095_238_095_2e-2,
    1.368_179_145_956_923_7e-2,
    -2.597_285_136_967_676_7e-3,
    4.420_271_086_937_753_6e-4,
    -6.966_501_316_537_627_4e-5,
    1.037_161_567_494_558_4e-5,
    -1.477_773_798_057_573_4e-6,
    2.033_366_068_712_230_9e-7,
    -2.719_503_864_190_858_5e-8,
    3.552_459_565_858_992_1e-9,
    -4.549_234_134_288_482_6e-10,
    5.727_579_587_663_928_3e-11,
    -7.106_022_157_009_557_5e-12,
    8.703_886_072_028_236_9e-13,
    -1.054_131_796_697_822_6e-13,
    1.263_931_191_124_789_0e-14,
];

const PE_TAYLOR: [f64; 18] = [
    -8.888_888_888_888_888_9e-2,
    3.386_243_386_243_386_2e-2,
    -7.619_047_619_047_619_0e-3,
    1.368_179_145_956_923_7e-3,
    -2.164_404_280_806_397_2e-4,
    3.157_336_490_669_824_0e-5,
    -4.354_063_322_836_017_1e-6,
    5.762_008_708_303_102_2e-7,
    -7.388_868_990_287_867_3e-8,
    9.242_573_039_601_049_6e-9,
    -1.133_126_610_079_524_4e-9,
    1.366_330_602_253_458_5e-10,
    -1.624_726_476_531_600_9e-11,
    1.909_193_195_887_976_1e-12,
    -2.220_631_924_065_486_7e-13,
    2.559_966_491_773_010_8e-14,
    -2.928_143_879_716_173_9e-15,
    3.326_134_713_486_286_7e-16,
];

const TAYLOR_LIMIT: f64 = 1.0;

fn even_taylor<T: Real>(coeffs: &[f64], x: T) -> T {
    let x2 = x * x;
    coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x2 + T::lit(c))
}

/// `(coth x, csch^2 x)` for `x > 0`.
#[inline]
fn coth_csch2<T: Real>(x: T) -> (T, T) {
    let q = (-(x + x)).exp();
    let one_minus = -(-(x + x)).exp_m1();
    let coth = (T::one() + q) / one_minus;
    let csch2 = T::lit(4.0) * q / (one_minus * one_minus);
    (coth, csch2)
}

/// `1/x^4 - cosh x / (x sinh^3 x)`.
pub fn force_thermal_summand<T: Real>(x: T) -> T {
    if x < T::lit(TAYLOR_LIMIT) {
        return even_taylor(&FT_TAYLOR, x);
    }
    let (coth, csch2) = coth_csch2(x);
    x.powi(-4) - coth * csch2 / x
}

/// `-2/x^4 + 1/(x^3 tanh x) + 1/(x^2 sinh^2 x)`.
pub fn energy_thermal_summand<T: Real>(x: T) -> T {
    if x < T::lit(TAYLOR_LIMIT) {
        return even_taylor(&ET_TAYLOR, x);
    }
    let (coth, csch2) = coth_csch2(x);
    -T::lit(2.0) * x.powi(-4) + coth * x.powi(-3) + csch2 * x.powi(-2)
}

/// `cosh x/(x^3 sinh x) + 1/(x^2 sinh^2 x) + 4 cosh x/(x sinh^3 x) - (2 + 4 cosh^2 x)/sinh^4 x`.
pub fn force_interplay_summand<T: Real>(x: T) -> T {
    if x < T::lit(TAYLOR_LIMIT) {
        return even_taylor(&PF_TAYLOR, x);
    }
    let (coth, csch2) = coth_csch2(x);
    let four = T::lit(4.0);
    coth * x.powi(-3) + csch2 * x.powi(-2) + four * coth * csch2 / x
        - (T::lit(2.0) * csch2 * csch2 + four * coth * coth * csch2)
}

/// `-4/x^4 + 1/(x^3 tanh x) + 1/(x^2 sinh^2 x) + 2 cosh x/(x sinh^3 x)`.
pub fn energy_interplay_summand<T: Real>(x: T) -> T {
    if x < T::lit(TAYLOR_LIMIT) {
        return even_taylor(&PE_TAYLOR, x);
    }
    let (coth, csch2) = coth_csch2(x);
    -T::lit(4.0) * x.powi(-4) + coth * x.powi(-3) + csch2 * x.powi(-2) + T::lit(2.0) * coth * csch2 / x
}

/// Smallest `x >= 1` beyond which `x^4 exp(-2x)` drops below `tol`; past it
/// `coth = 1` and `csch^2 = 0` to the requested accuracy.
pub(crate) fn exponential_cutoff<T: Real>(tol: T) -> T {
    let mut x = T::one();
    let step = T::lit(0.5);
    while x.powi(4) * (-(x + x)).exp() * T::lit(64.0) > tol {
        x = x + step;
    }
    x
}

// B_{2k} / (2k)!
const BERNOULLI_OVER_FACTORIAL: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    7.0 / 523_069_747_200.0,
];

/// Hurwitz zeta `sum_{k >= 0} (k + a)^-s` for integer `s >= 2`, `a > 0`.
pub fn hurwitz_zeta<T: Real>(s: i32, a: T) -> T {
    assert!(s >= 2, "hurwitz_zeta needs s >= 2");
    let shift = T::lit(12.0);
    let mut head = T::zero();
    let mut a = a;
    while a < shift {
        head = head + a.powi(-s);
        a = a + T::one();
    }
    // Euler-Maclaurin from a >= 12
    let sf = T::lit(s as f64);
    let mut value = a.powi(1 - s) / (sf - T::one()) + T::lit(0.5) * a.powi(-s);
    let mut rising = sf; // s (s+1) ... (s + 2k - 2)
    let mut power = a.powi(-s - 1);
    let a2 = a * a;
    for (k, &b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        value = value + T::lit(b) * rising * power;
        let j = T::lit((2 * k + 1) as f64);
        rising = rising * (sf + j) * (sf + j + T::one());
        power = power / a2;
    }
    head + value
}
