use crate::perm::{PermGroup, Point};

#[derive(Clone, Debug)]
pub struct WatkinsReport {
    pub x: Point,
    pub y: Point,
    /// Orbits of the two-point stabilizer on the remaining points.
    pub suborbits: Vec<Vec<Point>>,
    /// Some {x, y, z} with z in a suborbit longer than n/3 - 1.
    pub witness: Option<[Point; 3]>,
    /// Every suborbit is long enough, which gives 3-ut.
    pub all_qualify: bool,
}

/// Sufficient condition for 3-et from the suborbits of a two-point stabilizer.
/// Needs a transitive group whose point stabilizer is primitive on the other points.
pub fn watkins_3et(g: &PermGroup) -> std::result::Result<WatkinsReport, String> {
    let n = g.degree();
    if n < 4 {
        return Err("degree too small".into());
    }
    if !g.is_transitive() {
        return Err("group is not transitive".into());
    }
    let (x, y) = (0, 1);
    let rest: Vec<Point> = (1..n).collect();
    let gx = g
        .pointwise_stabilizer(&[x])
        .restrict_to(&rest)
        .map_err(|e| e.to_string())?;
    if !gx.is_transitive() || !gx.is_primitive() {
        return Err("point stabilizer is not primitive on the remaining points".into());
    }
    let gxy = g.pointwise_stabilizer(&[x, y]);
    let suborbits: Vec<Vec<Point>> = gxy
        .orbits()
        .into_iter()
        .filter(|o| !o.contains(&x) && !o.contains(&y))
        .collect();
    let long = |o: &Vec<Point>| 3 * o.len() + 3 > n;
    let witness = suborbits.iter().find(|o| long(o)).map(|o| [x, y, o[0]]);
    let all_qualify = suborbits.iter().all(long);
    Ok(WatkinsReport {
        x,
        y,
        suborbits,
        witness,
        all_qualify,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::catalog;
    use crate::et::{kut_decide, EtOptions};

    #[test]
    fn psl2_11_and_2_4_a6() {
        for key in ["PSL2(11)on11", "2^4:A6"] {
            let g = catalog(key).unwrap();
            let r = watkins_3et(&g).unwrap();
            assert!(r.all_qualify && r.witness.is_some(), "{}", key);
            assert!(kut_decide(&g, 3, &EtOptions::default())
                .unwrap()
                .ut()
                .is_yes());
        }
        assert!(watkins_3et(&PermGroup::cyclic(7)).is_err());
    }
}
