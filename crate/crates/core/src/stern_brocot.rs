//! Primitive lattice directions in slope order.

/// All primitive `(a, b)` with `0 ≤ a ≤ max_a`, `0 ≤ b ≤ max_b`, `(a, b) ≠ 0`,
/// sorted by increasing slope `b / a`: `(1, 0)` first and `(0, 1)` last.
///
/// Generated by an in-order walk of the Stern–Brocot tree. Every descendant
/// of a node has both coordinates at least as large as the node's, so a
/// subtree is cut as soon as its root leaves the box.
pub fn primitive_directions(max_a: i64, max_b: i64) -> Vec<(i64, i64)> {
    enum Frame {
        Visit((i64, i64), (i64, i64)),
        Emit((i64, i64)),
    }
    let mut out = Vec::new();
    if max_a >= 1 {
        out.push((1, 0));
    }
    let mut stack = vec![Frame::Visit((1, 0), (0, 1))];
    while let Some(frame) = stack.pop() {
        match frame {
            Frame::Emit(m) => out.push(m),
            Frame::Visit(l, r) => {
                let m = (l.0 + r.0, l.1 + r.1);
                if m.0 > max_a || m.1 > max_b {
                    continue;
                }
                stack.push(Frame::Visit(m, r));
                stack.push(Frame::Emit(m));
                stack.push(Frame::Visit(l, m));
            }
        }
    }
    if max_b >= 1 {
        out.push((0, 1));
    }
    out
}
