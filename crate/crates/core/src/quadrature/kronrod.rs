#![allow(clippy::excessive_precision)]

use crate::num::Real;

// 15-point Kronrod abscissae on [-1, 1] (non-negative half, centre last),
// with the embedded 7-point Gauss rule on the odd-indexed nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

pub(crate) const POINTS: usize = 15;

/// Result of one Gauss-Kronrod panel.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Panel<T> {
    pub a: T,
    pub b: T,
    pub value: T,
    pub error: T,
}

/// Applies the 7/15 Gauss-Kronrod pair on `[a, b]`.
///
/// The error estimate follows the usual QUADPACK rescaling of
/// `|K15 - G7|`, floored at a few ulps of the absolute integral.
pub(crate) fn gk15<T, F, E>(f: &mut F, a: T, b: T) -> Result<Panel<T>, E>
where
    T: Real,
    F: FnMut(T) -> Result<T, E>,
{
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let abs_half_len = half_len.abs();

    let f_center = f(center)?;
    let mut res_g = f_center * T::lit(WG[3]);
    let mut res_k = f_center * T::lit(WGK[7]);
    let mut res_abs = res_k.abs();
    let mut fv1 = [T::zero(); 7];
    let mut fv2 = [T::zero(); 7];

    for j in 0..7 {
        let dx = half_len * T::lit(XGK[j]);
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        let wk = T::lit(WGK[j]);
        res_k = res_k + wk * (f1 + f2);
        res_abs = res_abs + wk * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }

    let mean = res_k * half;
    let mut res_asc = T::lit(WGK[7]) * (f_center - mean).abs();
    for j in 0..7 {
        res_asc = res_asc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_k * half_len;
    let res_abs = res_abs * abs_half_len;
    let res_asc = res_asc * abs_half_len;
    let mut error = ((res_k - res_g) * half_len).abs();

    if res_asc != T::zero() && error != T::zero() {
        let scale = (T::lit(200.0) * error / res_asc).powf(T::lit(1.5));
        error = if scale < T::one() { res_asc * scale } else { res_asc };
    }
    let fifty_eps = T::lit(50.0) * T::epsilon();
    if res_abs > T::min_positive_value() / fifty_eps {
        error = error.max(fifty_eps * res_abs);
    }

    Ok(Panel { a, b, value, error })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(f: impl Fn(f64) -> f64) -> impl FnMut(f64) -> Result<f64, ()> {
        move |x| Ok(f(x))
    }

    #[test]
    fn exact_for_low_degree_polynomials() {
        // K15 integrates degree <= 22 exactly
        let p = gk15(&mut ok(|x| x.powi(10) - 3.0 * x.powi(3) + 1.0), 0.0, 2.0).unwrap();
        let exact = 2f64.powi(11) / 11.0 - 0.75 * 16.0 + 2.0;
        assert!((p.value - exact).abs() < 1e-12 * exact);
        assert!(p.error < 1e-10);
    }

    #[test]
    fn weights_sum_to_two() {
        let k: f64 = 2.0 * WGK[..7].iter().sum::<f64>() + WGK[7];
        let g: f64 = 2.0 * WG[..3].iter().sum::<f64>() + WG[3];
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn reversed_interval_flips_sign() {
        let p = gk15(&mut ok(f64::exp), 1.0, 0.0).unwrap();
        assert!((p.value + (1f64.exp() - 1.0)).abs() < 1e-14);
    }
}
