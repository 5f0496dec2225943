//! SO(3) exponential, dexp and its truncated inverse.

use symplectic_lie::lie::{dexpinv_trunc, orthogonality_defect, Cutoff};
use symplectic_lie::{AlgebraVector, LieGroup, So3};

fn main() {
    let x = AlgebraVector::from([0.3, -0.2, 0.4]);
    let y = AlgebraVector::from([1.0, 0.5, -0.25]);

    let g = So3::exp(&x);
    println!("exp(x) =\n{g:.6}");
    println!("|g^T g - I| = {:.2e}", orthogonality_defect(&g));
    println!("log(exp(x)) - x = {:.2e}", (So3::log(&g).unwrap() - x).norm());

    let round_trip = So3::dexp(&x, &So3::dexpinv(&x, &y).unwrap());
    println!("dexp(dexpinv(y)) - y = {:.2e}", (round_trip - y).norm());

    let exact = So3::dexpinv(&x, &y).unwrap();
    println!("\n r   |dexpinv - truncated|");
    for r in 0..=6 {
        let approx = dexpinv_trunc::<So3, 3>(Cutoff::new(r).unwrap(), &x, &y);
        println!("{r:>2}   {:.3e}", (exact - approx).norm());
    }
}
