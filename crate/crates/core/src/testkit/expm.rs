use crate::mat4::Mat4;

const TAYLOR_TERMS: usize = 20;

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
///
/// The argument is scaled so its max-row-sum norm is at most 1/2; twenty
/// terms then leave a truncation error far below 1e-13 before squaring.
pub fn expm(s: &Mat4) -> Mat4 {
    let norm = (0..4)
        .map(|i| (0..4).map(|j| s[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0;
    let mut scaled = *s;
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as i32;
        scaled = s.scale(0.5_f64.powi(squarings));
    }

    let mut sum = Mat4::IDENTITY;
    let mut term = Mat4::IDENTITY;
    for k in 1..=TAYLOR_TERMS {
        term = (term * scaled).scale(1.0 / k as f64);
        sum = sum + term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}
