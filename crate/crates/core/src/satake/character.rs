use super::engine::Shells;
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::qrat::QRat;
use crate::rootdata::RootDatum;
use crate::series::GradedSeries;

/// Character of the irreducible representation of the dual group with highest weight `lambda`,
/// as the alternating sum `sum_w (-1)^l(w) e^{w(lambda + rho) - rho}` over the Weyl denominator.
pub fn weyl_character(datum: &RootDatum, lambda: &LatticeVector) -> Result<GradedSeries<QRat>> {
    let op = "weyl_character";
    if !lambda.is_pure_finite() {
        return Err(Error::InvalidArgument {
            op,
            msg: format!("characters need a pure-finite weight, got {lambda}"),
        });
    }
    datum.check_dominant(op, &lambda.finite)?;
    let mut num = GradedSeries::zero(datum.rank, None);
    let mut shells = Shells::new(datum, lambda.clone(), false);
    loop {
        let shell = shells.next_shell(|_| true);
        if shell.is_empty() {
            break;
        }
        for p in shell {
            // rho - w(rho) is the sum of N(w^{-1}).
            let mut e = p.weight.clone();
            for b in &p.inversions {
                e = &e - b;
            }
            let sign = if p.length() % 2 == 0 { 1 } else { -1 };
            num.add_term(e, QRat::from_int(sign));
        }
    }
    let mut out = num;
    for b in &datum.positive_coroots {
        out = out.divide_by_binomial(&LatticeVector::finite(b.clone()))?;
    }
    Ok(out)
}
