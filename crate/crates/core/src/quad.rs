//! Quadrature helpers: fixed Gauss-Legendre panels and composite rules.

/// 8-point Gauss-Legendre nodes/weights on [-1, 1].
const GAUSS8: [(f64, f64); 8] = [
    (-0.960_289_856_497_536_2, 0.101_228_536_290_376_26),
    (-0.796_666_477_413_626_7, 0.222_381_034_453_374_47),
    (-0.525_532_409_916_329, 0.313_706_645_877_887_3),
    (-0.183_434_642_495_649_8, 0.362_683_783_378_362),
    (0.183_434_642_495_649_8, 0.362_683_783_378_362),
    (0.525_532_409_916_329, 0.313_706_645_877_887_3),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_47),
    (0.960_289_856_497_536_2, 0.101_228_536_290_376_26),
];

/// Integrate `f` over [a, b] with one 8-point Gauss panel.
pub fn gauss8<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    GAUSS8
        .iter()
        .map(|&(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Integrate `f` over [a, b] with `panels` Gauss-8 panels.
pub fn gauss8_panels<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
    let step = (b - a) / panels as f64;
    (0..panels)
        .map(|i| gauss8(f, a + step * i as f64, a + step * (i + 1) as f64))
        .sum()
}

/// Cumulative integral of `f` at the node set `a + k*(b-a)/n`, k = 0..=n,
/// each increment by one Gauss-8 panel. Returns n+1 values starting at 0.
pub fn cumulative_gauss8<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> Vec<f64> {
    let step = (b - a) / n as f64;
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 0..n {
        acc += gauss8(f, a + step * k as f64, a + step * (k + 1) as f64);
        out.push(acc);
    }
    out
}

/// Linear interpolation in a sorted table (clamped at the ends).
pub fn interp_linear(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    if x <= xs[0] {
        return ys[0];
    }
    if x >= xs[xs.len() - 1] {
        return ys[ys.len() - 1];
    }
    let idx = match xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
        Ok(i) => return ys[i],
        Err(i) => i,
    };
    let (x0, x1) = (xs[idx - 1], xs[idx]);
    let w = (x - x0) / (x1 - x0);
    ys[idx - 1] * (1.0 - w) + ys[idx] * w
}
