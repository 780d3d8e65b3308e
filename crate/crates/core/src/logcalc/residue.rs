use crate::algebra::{Coeff, Polynomial};
use crate::error::{Error, Result};

use super::chart::Chart;
use super::form::LogForm;

/// Residue of a log 1-form along `z_i = 0`: the `e^i` coefficient restricted
/// to `z_i = 0`.
pub fn residue<C: Coeff>(chart: &Chart, eta: &LogForm<C>, i: usize) -> Result<Polynomial<C>> {
    if eta.degree() != 1 {
        return Err(Error::Degree(format!("residue of a {}-form", eta.degree())));
    }
    if !chart.is_log(i) {
        return Err(Error::Invalid(format!("{} is not a divisor coordinate", chart.name(i))));
    }
    let c = eta.coeff(1 << i);
    if c.min_degree_in(i) < 0 {
        return Err(Error::Malformed(format!(
            "coefficient of dlog({}) has a pole along {} = 0",
            chart.name(i),
            chart.name(i)
        )));
    }
    Ok(c.at_zero(i))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residues<C> {
    /// Every residue is a constant; listed by divisor coordinate.
    Constants(Vec<(usize, C)>),
    /// Residues with at least one non-constant entry.
    Nonconstant(Vec<(usize, Polynomial<C>)>),
}

/// Residues along every divisor coordinate, classified as constant or not.
pub fn res_const<C: Coeff>(chart: &Chart, eta: &LogForm<C>) -> Result<Residues<C>> {
    let all: Vec<(usize, Polynomial<C>)> = chart
        .log_coords()
        .map(|i| residue(chart, eta, i).map(|r| (i, r)))
        .collect::<Result<_>>()?;
    if all.iter().all(|(_, r)| r.is_constant()) {
        Ok(Residues::Constants(all.into_iter().map(|(i, r)| (i, r.constant_term())).collect()))
    } else {
        Ok(Residues::Nonconstant(all))
    }
}

/// Residues at the deepest stratum: each `e^i` coefficient with every
/// divisor coordinate set to zero, in index order.
pub fn stratum_residues<C: Coeff>(chart: &Chart, eta: &LogForm<C>) -> Result<Vec<(usize, Polynomial<C>)>> {
    chart
        .log_coords()
        .map(|i| {
            let mut r = residue(chart, eta, i)?;
            for j in chart.log_coords() {
                if r.min_degree_in(j) < 0 {
                    return Err(Error::Malformed(format!(
                        "residue along {} has a pole along {} = 0",
                        chart.name(i),
                        chart.name(j)
                    )));
                }
                r = r.at_zero(j);
            }
            Ok((i, r))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;
    use crate::logcalc::Arena;

    type Fm = LogForm<Scalar>;
    type P = Polynomial<Scalar>;

    #[test]
    fn constant_residue() {
        let c = Chart::with_names(&["x"], &["x"], Arena::Torus).unwrap();
        let eta = Fm::coframe(1, 0).scale(&P::constant(1, Scalar::ratio(5, 2)));
        assert_eq!(residue(&c, &eta, 0).unwrap(), P::constant(1, Scalar::ratio(5, 2)));
        assert_eq!(res_const(&c, &eta).unwrap(), Residues::Constants(vec![(0, Scalar::ratio(5, 2))]));
    }

    #[test]
    fn nonconstant_residue_of_non_closed_form() {
        let c = Chart::with_names(&["x", "z"], &["x"], Arena::Torus).unwrap();
        let z = P::var(2, 1);
        let eta = Fm::coframe(2, 0).scale(&z);
        assert_eq!(residue(&c, &eta, 0).unwrap(), z);
        assert!(matches!(res_const(&c, &eta).unwrap(), Residues::Nonconstant(_)));
        assert!(!eta.is_closed(&c));
    }

    #[test]
    fn stratum_order() {
        let c = Chart::with_names(&["x", "y"], &["x", "y"], Arena::Torus).unwrap();
        let x = P::var(2, 0);
        let eta = &Fm::coframe(2, 0).scale(&P::constant(2, Scalar::int(3))) + &Fm::coframe(2, 1).scale(&x);
        let r = stratum_residues(&c, &eta).unwrap();
        assert_eq!(r, vec![(0, P::constant(2, Scalar::int(3))), (1, P::zero(2))]);
        assert_eq!(residue(&c, &eta, 1).unwrap(), x);
    }

    #[test]
    fn pole_in_residue_coordinate_is_malformed() {
        let c = Chart::with_names(&["x"], &["x"], Arena::Torus).unwrap();
        let eta = Fm::coframe(1, 0).scale(&P::var(1, 0).pow(-1).unwrap());
        assert!(matches!(residue(&c, &eta, 0), Err(Error::Malformed(_))));
    }
}
