// Float helpers routed through libm so the crate builds without std.

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn ln_1p(x: f64) -> f64 {
    libm::log1p(x)
}

#[inline]
pub(crate) fn exp_m1(x: f64) -> f64 {
    libm::expm1(x)
}

#[inline]
pub(crate) fn powi(x: f64, n: i32) -> f64 {
    libm::pow(x, n as f64)
}

pub(crate) fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Central moments m2, m3 (divide by n) around the sample mean.
pub(crate) fn central_moments(xs: &[f64]) -> (f64, f64, f64) {
    let mu = mean(xs);
    let n = xs.len() as f64;
    let (mut s2, mut s3) = (0.0, 0.0);
    for &x in xs {
        let d = x - mu;
        s2 += d * d;
        s3 += d * d * d;
    }
    (mu, s2 / n, s3 / n)
}

/// Treats a dispersion as zero when it is indistinguishable from rounding
/// noise relative to the magnitude of the data.
pub(crate) fn is_degenerate(std_pop: f64, xs: &[f64]) -> bool {
    let scale = xs.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    scale == 0.0 || std_pop <= 1e-13 * scale
}
