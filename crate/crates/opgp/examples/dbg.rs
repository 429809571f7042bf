use opgp::*;

fn mat(ring: &RingSpec, rows: &[&[&str]]) -> OperatorMatrix {
    OperatorMatrix::from_rows(
        ring,
        rows.iter()
            .map(|r| r.iter().map(|s| parse_operator(s, ring).unwrap()).collect())
            .collect(),
    )
}

fn main() {
    let r = RingSpec::weyl(&["x", "y", "z"]);
    let b1 = mat(&r, &[&["0", "Dz", "-Dy"], &["-Dz", "0", "Dx"], &["Dy", "-Dx", "0"]]);
    let b2 = mat(&r, &[&["0", "z", "-y"], &["-z", "0", "x"], &["y", "-x", "0"]]);
    let res = intersect(&b1, &b2).unwrap();
    let c_paper = mat(&r, &[
        &["x", "Dx", "0"],
        &["y", "Dy", "0"],
        &["z", "Dz", "0"],
        &["Dx", "0", "x"],
        &["Dy", "0", "y"],
        &["Dz", "0", "z"],
    ]);
    // column modules as row modules of the involutions
    let ours = res.c.involution();
    let paper = c_paper.involution();
    println!("ours in paper: {} rows residue", reduce_matrix(&ours, &paper).rows());
    println!("paper in ours: {} rows residue", reduce_matrix(&paper, &ours).rows());
    println!("equal: {}", row_module_equal(&ours, &paper));
    // check [B1 B2] * c_paper == 0
    let b = b1.hconcat(&b2);
    println!("B*C_paper == 0: {}", (&b * &c_paper).is_zero());
}
