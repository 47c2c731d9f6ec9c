use super::{verify_solution, NetworkCode};
use crate::error::{Error, Result};
use crate::gf::Matrix;
use crate::network::{extend_messages, parallel_copy_id, parallelize, EdgeId, Network};
use crate::subspace::Subspace;

/// Turns a `(q, t)` solution on `net` into a scalar solution on the
/// `t`-parallelized network: copy `j` of an edge carries row `j` of its
/// global matrix.
pub fn split_to_parallel(net: &Network, code: &NetworkCode) -> Result<(Network, NetworkCode)> {
    let t = code.t();
    let par = parallelize(net, t)?;
    let mut out = NetworkCode::new(code.field(), 1, code.width())?;
    for e in net.edges() {
        let g = code.get(e.id).ok_or(Error::MissingAssignment(e.id.0))?;
        for j in 0..t {
            out.insert(parallel_copy_id(e.id, j, t), g.select_rows(&[j]))?;
        }
    }
    Ok((par, out))
}

/// The new edges of `extend_messages(net, new_h)`: first the `h` edges into
/// the old source, then the added edges of each terminal in order.
fn added_edges(net: &Network, ext: &Network) -> (Vec<EdgeId>, Vec<Vec<EdgeId>>) {
    let into_old: Vec<EdgeId> = ext
        .out_edges(ext.source())
        .filter(|e| e.to == net.source())
        .map(|e| e.id)
        .collect();
    let per_terminal = net
        .terminals()
        .iter()
        .map(|&tau| {
            ext.out_edges(ext.source())
                .filter(|e| e.to == tau)
                .map(|e| e.id)
                .collect()
        })
        .collect();
    (into_old, per_terminal)
}

fn block(code_field: &crate::gf::FieldSpec, t: usize, width: usize, i: usize) -> Matrix {
    Subspace::coordinate_block(code_field, width, i * t, t).basis().clone()
}

/// Lifts a `(q, t)` solution on `net` to `extend_messages(net, new_h)`.
/// The edges into the old source carry message blocks `1..=h`, the extra
/// terminal edges carry blocks `h+1..=new_h`.
pub fn extend_solution(net: &Network, code: &NetworkCode, new_h: usize) -> Result<(Network, NetworkCode)> {
    let ext = extend_messages(net, new_h)?;
    let t = code.t();
    let width = new_h * t;
    let f = code.field();
    let mut out = NetworkCode::new(f, t, new_h)?;
    for e in net.edges() {
        let g = code.get(e.id).ok_or(Error::MissingAssignment(e.id.0))?;
        out.insert(e.id, g.widen(width, 0))?;
    }
    let (into_old, per_terminal) = added_edges(net, &ext);
    for (i, id) in into_old.into_iter().enumerate() {
        out.insert(id, block(f, t, width, i))?;
    }
    for ids in per_terminal {
        for (k, id) in ids.into_iter().enumerate() {
            out.insert(id, block(f, t, width, net.h() + k))?;
        }
    }
    Ok((ext, out))
}

/// Recovers a solution on `net` from an accepted solution on
/// `extend_messages(net, ext.h())`: with `A` the stacked matrices of the
/// edges into the old source, each original edge gets the unique `X`
/// with `X A = G_e`.
pub fn restrict_extended_solution(net: &Network, ext: &Network, code: &NetworkCode) -> Result<NetworkCode> {
    let verdict = verify_solution(ext, code)?;
    if !verdict.accepted() {
        return Err(Error::InvalidArgument(
            "the extended code is not a solution".into(),
        ));
    }
    let t = code.t();
    let (into_old, _) = added_edges(net, ext);
    let parts: Vec<&Matrix> = into_old.iter().filter_map(|&id| code.get(id)).collect();
    let a = Matrix::stack_all(code.field(), code.width(), parts)?;
    if a.rank() != net.h() * t {
        return Err(Error::InvalidArgument(
            "edges into the old source do not have full rank".into(),
        ));
    }
    let mut out = NetworkCode::new(code.field(), t, net.h())?;
    for e in net.edges() {
        let g = code.get(e.id).ok_or(Error::MissingAssignment(e.id.0))?;
        let x = a
            .solve_left(g)?
            .ok_or_else(|| Error::InvalidArgument(format!("edge {} leaves the source space", e.id)))?;
        out.insert(e.id, x)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::lincode::{search_solution, SearchOutcome};
    use crate::network::butterfly;

    fn solve(net: &Network, q: u64, t: usize) -> Option<NetworkCode> {
        match search_solution(net, &FieldSpec::from_order(q).unwrap(), t, 10_000_000).unwrap().0 {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::NoSolution => None,
            SearchOutcome::Unknown => panic!("budget"),
        }
    }

    #[test]
    fn vector_solution_splits_into_parallel_scalar_one() {
        let b = butterfly();
        let code = solve(&b, 2, 2).unwrap();
        let (par, scalar) = split_to_parallel(&b, &code).unwrap();
        assert_eq!(par.h(), 4);
        assert!(verify_solution(&par, &scalar).unwrap().accepted());
    }

    #[test]
    fn extension_roundtrip() {
        let b = butterfly();
        let code = solve(&b, 3, 1).unwrap();
        for new_h in [3, 4] {
            let (ext, lifted) = extend_solution(&b, &code, new_h).unwrap();
            assert!(verify_solution(&ext, &lifted).unwrap().accepted());
            let back = restrict_extended_solution(&b, &ext, &lifted).unwrap();
            assert!(verify_solution(&b, &back).unwrap().accepted());
            let found = solve(&ext, 2, 1).unwrap();
            let back = restrict_extended_solution(&b, &ext, &found).unwrap();
            assert!(verify_solution(&b, &back).unwrap().accepted());
        }
    }
}
