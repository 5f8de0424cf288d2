//! Golden-section search for a one-dimensional maximum.

/// Golden ratio φ.
const PHI: f64 = 1.618_033_988_749_895;
/// 2 − φ ≈ 0.382, the golden-section step fraction.
const RESP: f64 = 2.0 - PHI;

/// Maximize a unimodal function on `[a, b]` to absolute x-tolerance `xtol`.
///
/// Returns `(x_max, f(x_max))`. The caller guarantees `f` is unimodal on the
/// bracket (a single interior maximum); the search then converges
/// unconditionally, shrinking the bracket by the golden ratio each iteration.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, xtol: f64) -> (f64, f64) {
    let (mut a, mut b) = if a < b { (a, b) } else { (b, a) };
    let mut x1 = a + RESP * (b - a);
    let mut x2 = b - RESP * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a) > xtol {
        if f1 < f2 {
            // Maximum lies in [x1, b].
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - RESP * (b - a);
            f2 = f(x2);
        } else {
            // Maximum lies in [a, x2].
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + RESP * (b - a);
            f1 = f(x1);
        }
    }
    let xm = 0.5 * (a + b);
    (xm, f(xm))
}
