use super::matrix::FrobeniusMatrix;
use super::WittError;
use crate::scalar::Scalar;

/// Lower convex hull of `(i, v_i)` over the points with `Some` value, as
/// the list of hull vertex indices (increasing).
fn lower_hull<T: Scalar>(points: &[(usize, T)]) -> Vec<usize> {
    let mut hull: Vec<usize> = Vec::new();
    for (idx, (x, y)) in points.iter().enumerate() {
        while hull.len() >= 2 {
            let (x1, y1) = &points[hull[hull.len() - 2]];
            let (x2, y2) = &points[hull[hull.len() - 1]];
            // drop the middle point unless it lies strictly below the chord
            let lhs = (y2.clone() - y1.clone()) * T::from_int((*x - *x1) as i64);
            let rhs = (y.clone() - y1.clone()) * T::from_int((*x2 - *x1) as i64);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(idx);
    }
    hull
}

/// Root valuations (descending) of a monic polynomial from its coefficient
/// valuations, constant term first. `None` marks a saturated coefficient
/// (valuation only known to be `≥ cap`). Errors when the polygon is not
/// determined by the known data.
pub fn polygon_slopes<T: Scalar>(vals: &[Option<u32>], cap: u32) -> Result<Vec<T>, ()> {
    let n = vals.len() - 1;
    if vals[0].is_none() {
        return Err(());
    }
    let known: Vec<(usize, T)> = vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i, T::from_int(v as i64))))
        .collect();
    let hull = lower_hull(&known);
    // every saturated point must lie on or above the hull at its abscissa
    for (i, v) in vals.iter().enumerate() {
        if v.is_some() {
            continue;
        }
        let seg = hull.windows(2).find(|w| known[w[0]].0 < i && i < known[w[1]].0).ok_or(())?;
        let ((x1, y1), (x2, y2)) = (&known[seg[0]], &known[seg[1]]);
        let at = y1.clone() + (y2.clone() - y1.clone()) * T::from_frac((i - x1) as i64, (x2 - x1) as i64);
        if T::from_int(cap as i64) < at {
            return Err(());
        }
    }
    let mut out = Vec::with_capacity(n);
    for w in hull.windows(2) {
        let ((x1, y1), (x2, y2)) = (&known[w[0]], &known[w[1]]);
        let len = (x2 - x1) as i64;
        let slope = (y1.clone() - y2.clone()) / T::from_int(len);
        out.extend(std::iter::repeat_n(slope, len as usize));
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

fn valuation_data(a: &FrobeniusMatrix) -> Vec<Option<u32>> {
    let ring = a.ring();
    a.linearized()
        .charpoly()
        .iter()
        .map(|c| {
            let v = ring.val(c);
            (v < ring.precision()).then_some(v)
        })
        .collect()
}

// The only undetermined case is a saturated determinant, whose true
// valuation is unknown; doubling is a guess, not a bound.
fn precision_error(a: &FrobeniusMatrix) -> WittError {
    let n = a.ring().precision();
    WittError::Precision { precision: n, suggested: n.saturating_mul(2) }
}

/// Slopes of `F = Aσ` (descending): `1/s` times the root valuations of the
/// characteristic polynomial of `A σ(A) ⋯ σ^{s−1}(A)`.
pub fn newton_slopes<T: Scalar>(a: &FrobeniusMatrix) -> Result<Vec<T>, WittError> {
    if a.dim() == 0 {
        return Ok(Vec::new());
    }
    let vals = valuation_data(a);
    let s = T::from_int(a.ring().degree() as i64);
    let slopes: Vec<T> = polygon_slopes(&vals, a.ring().precision()).map_err(|_| precision_error(a))?;
    Ok(slopes.into_iter().map(|x| x / s.clone()).collect())
}

/// `val(det A)`, the Kottwitz point of `F = Aσ` for `GL_n`.
pub fn kappa_of_matrix(a: &FrobeniusMatrix) -> Result<i64, WittError> {
    let ring = a.ring();
    let v = ring.val(&a.det());
    if v >= ring.precision() {
        return Err(precision_error(a));
    }
    Ok(v as i64)
}
