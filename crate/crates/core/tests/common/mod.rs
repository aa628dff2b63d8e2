#![allow(dead_code)]

use fundom::PermGroup;

pub struct Case {
    pub name: String,
    pub group: PermGroup,
    /// Known by construction: a direct product of full symmetric groups on
    /// the coordinate orbits.
    pub symmetric_product: bool,
}

fn case(name: impl Into<String>, group: PermGroup, symmetric_product: bool) -> Case {
    Case {
        name: name.into(),
        group,
        symmetric_product,
    }
}

pub fn product(factors: &[PermGroup]) -> PermGroup {
    PermGroup::direct_product(factors).unwrap()
}

pub fn c3_blocks(n: usize) -> PermGroup {
    product(&vec![PermGroup::cyclic(3); n / 3])
}

pub fn transpositions(n: usize) -> PermGroup {
    product(&vec![PermGroup::symmetric(2); n / 2])
}

/// Groups of degree at most `max_n`: symmetric, cyclic, dihedral,
/// elementary abelian, the C_3 block family and mixed direct products.
pub fn battery(max_n: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for n in 2..=max_n.min(8) {
        out.push(case(format!("S_{n}"), PermGroup::symmetric(n), true));
    }
    for n in 3..=max_n {
        out.push(case(format!("C_{n}"), PermGroup::cyclic(n), false));
    }
    for n in 4..=max_n {
        out.push(case(format!("D_{n}"), PermGroup::dihedral(n), false));
    }
    for n in (4..=max_n).step_by(2) {
        out.push(case(format!("Z2^{} (n={n})", n / 2), transpositions(n), true));
    }
    for n in (6..=max_n).step_by(3) {
        out.push(case(format!("C_3 blocks (n={n})"), c3_blocks(n), false));
    }
    let mixed = [
        ("S_3 x S_2", vec![PermGroup::symmetric(3), PermGroup::symmetric(2)], true),
        ("S_2 x C_3", vec![PermGroup::symmetric(2), PermGroup::cyclic(3)], false),
        ("C_4 x S_3", vec![PermGroup::cyclic(4), PermGroup::symmetric(3)], false),
        ("D_4 x S_2", vec![PermGroup::dihedral(4), PermGroup::symmetric(2)], false),
        ("S_4 x S_3", vec![PermGroup::symmetric(4), PermGroup::symmetric(3)], true),
        ("C_3 x C_3 x S_2", vec![PermGroup::cyclic(3), PermGroup::cyclic(3), PermGroup::symmetric(2)], false),
        ("S_2 x S_1 x C_5", vec![PermGroup::symmetric(2), PermGroup::trivial(1), PermGroup::cyclic(5)], false),
        ("S_2 x S_2 x S_1", vec![PermGroup::symmetric(2), PermGroup::symmetric(2), PermGroup::trivial(1)], true),
    ];
    for (name, factors, sym) in mixed {
        let g = product(&factors);
        if g.degree() <= max_n {
            out.push(case(name, g, sym));
        }
    }
    // The diagonal action is not a product over a coordinate partition.
    if max_n >= 6 {
        out.push(case(
            "<(1 2 3)(4 5 6)>",
            PermGroup::from_cycle_strings(6, &["(1 2 3)(4 5 6)"]).unwrap(),
            false,
        ));
    }
    out
}
