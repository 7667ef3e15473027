//! Spectral classification of a few profiles.

use cahen_wallach::SymmetricProfile;
use nalgebra::DMatrix;

fn main() -> cahen_wallach::Result<()> {
    let cases = [
        ("real, scalar", DMatrix::from_diagonal_element(2, 2, 4.0)),
        ("imaginary", DMatrix::from_diagonal_element(2, 2, -1.0)),
        ("mixed", DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])),
        ("real, off-diagonal", DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0])),
    ];
    for (label, s) in cases {
        let p = SymmetricProfile::new(s)?;
        let c = p.classify();
        println!(
            "{label:20} type={:?} conformally_flat={} lambda_max_sq={:?}",
            c.space_type, c.conformally_flat, c.lambda_max_sq
        );
    }
    Ok(())
}
