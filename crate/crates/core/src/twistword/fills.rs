//! Filling test by boundary tracing on the ribbon graph of a curve system.

use std::collections::HashMap;

use super::{CurveId, CurveTable};
use crate::{Error, Result};

/// Whether the union of `curves` fills `S_g` (every complementary region is a disk).
///
/// The union is a 4-valent graph with `V` crossings and `2V` edges. Thickening
/// it gives a ribbon surface with `b` boundary circles; capping them yields a
/// closed surface of Euler characteristic `-V + b`, which equals `2 - 2g`
/// exactly when the curves fill. A curve without crossings is an annulus
/// contributing two boundary circles.
pub fn fills(curves: &[CurveId], genus: u32) -> Result<bool> {
    let table = CurveTable::new(genus);
    let mut set: Vec<CurveId> = curves.to_vec();
    set.sort();
    set.dedup();
    if set.is_empty() {
        return Ok(false);
    }
    let mut along: HashMap<CurveId, Vec<CurveId>> = HashMap::new();
    for c in &set {
        let order = table.crossings_along(c).ok_or_else(|| Error::MissingRibbonData(c.to_string()))?;
        along.insert(*c, order.into_iter().filter(|x| set.contains(x)).collect());
    }

    // Vertex of the crossing {u, v}, keyed by the ordered pair with u < v.
    let key = |u: CurveId, v: CurveId| if u < v { (u, v) } else { (v, u) };
    let mut vertices: Vec<(CurveId, CurveId)> = Vec::new();
    for (u, list) in &along {
        for v in list {
            let k = key(*u, *v);
            if !vertices.contains(&k) {
                vertices.push(k);
            }
        }
    }

    // Darts: (curve, edge index, forward?). Edge j of curve u runs from its
    // j-th crossing to the next one, cyclically.
    type Dart = (CurveId, usize, bool);
    let start = |d: &Dart| -> (CurveId, CurveId) {
        let list = &along[&d.0];
        let j = if d.2 { d.1 } else { (d.1 + 1) % list.len() };
        key(d.0, list[j])
    };
    let reverse = |d: &Dart| -> Dart { (d.0, d.1, !d.2) };

    // Outgoing darts of curve u at the crossing with v.
    let out_darts = |u: CurveId, v: CurveId| -> (Dart, Dart) {
        let list = &along[&u];
        let j = list.iter().position(|x| *x == v).expect("crossing is on the curve");
        let prev = (j + list.len() - 1) % list.len();
        ((u, j, true), (u, prev, false))
    };

    let mut rotation: HashMap<Dart, Dart> = HashMap::new();
    for &(u, v) in &vertices {
        let hu = table.homology(&u)?;
        let hv = table.homology(&v)?;
        let sign = CurveTable::pairing(&hu, &hv).signum();
        let (uf, ub) = out_darts(u, v);
        let (vf, vb) = out_darts(v, u);
        let cyc = if sign >= 0 { [uf, vf, ub, vb] } else { [uf, vb, ub, vf] };
        for i in 0..4 {
            rotation.insert(cyc[i], cyc[(i + 1) % 4]);
        }
    }

    let mut seen: std::collections::HashSet<Dart> = std::collections::HashSet::new();
    let mut boundaries = 0i64;
    let darts: Vec<Dart> = rotation.keys().copied().collect();
    for d0 in darts {
        if seen.contains(&d0) {
            continue;
        }
        boundaries += 1;
        let mut d = d0;
        loop {
            seen.insert(d);
            let r = reverse(&d);
            debug_assert_eq!(start(&r), start(&rotation[&r]));
            d = rotation[&r];
            if d == d0 {
                break;
            }
        }
    }
    let isolated = along.values().filter(|l| l.is_empty()).count() as i64;
    boundaries += 2 * isolated;
    let v = vertices.len() as i64;
    Ok(-v + boundaries == 2 - 2 * genus as i64)
}
