/**
 * Complex arithmetic and Mobius disk automorphisms.
 *
 * A disk automorphism is stored as the matrix [[a, b], [conj(b), conj(a)]]
 * acting by z -> (a z + b) / (conj(b) z + conj(a)), normalized so that
 * |a|^2 - |b|^2 = 1.  Translations and their compositions stay in this
 * family, so arbitrary pan/recenter sequences compose exactly.
 */

export interface C {
  re: number;
  im: number;
}

export const c = (re: number, im = 0): C => ({ re, im });
export const cadd = (x: C, y: C): C => c(x.re + y.re, x.im + y.im);
export const csub = (x: C, y: C): C => c(x.re - y.re, x.im - y.im);
export const cmul = (x: C, y: C): C =>
  c(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re);
export const conj = (x: C): C => c(x.re, -x.im);
export const cabs = (x: C): number => Math.hypot(x.re, x.im);
export const cscale = (x: C, s: number): C => c(x.re * s, x.im * s);

export function cdiv(x: C, y: C): C {
  const d = y.re * y.re + y.im * y.im;
  return c((x.re * y.re + x.im * y.im) / d, (x.im * y.re - x.re * y.im) / d);
}

/** Mobius disk automorphism, normalized SU(1,1) representative. */
export interface Mobius {
  a: C;
  b: C;
}

export const IDENTITY: Mobius = { a: c(1), b: c(0) };

function normalize(m: Mobius): Mobius {
  const n = Math.sqrt(
    m.a.re * m.a.re + m.a.im * m.a.im - (m.b.re * m.b.re + m.b.im * m.b.im),
  );
  return { a: cscale(m.a, 1 / n), b: cscale(m.b, 1 / n) };
}

/** Translation taking z0 to the origin: z -> (z - z0) / (-conj(z0) z + 1). */
export function translation(z0: C): Mobius {
  if (cabs(z0) >= 1) throw new RangeError("translation center outside the disk");
  return normalize({ a: c(1), b: cscale(z0, -1) });
}

/** Composition: apply(compose(f, g), z) === apply(f, apply(g, z)). */
export function compose(f: Mobius, g: Mobius): Mobius {
  return normalize({
    a: cadd(cmul(f.a, g.a), cmul(f.b, conj(g.b))),
    b: cadd(cmul(f.a, g.b), cmul(f.b, conj(g.a))),
  });
}

export function apply(m: Mobius, z: C): C {
  return cdiv(cadd(cmul(m.a, z), m.b), cadd(cmul(conj(m.b), z), conj(m.a)));
}

export function inverse(m: Mobius): Mobius {
  return { a: conj(m.a), b: cscale(m.b, -1) };
}

/** Hyperbolic distance between two points of the open unit disk. */
export function poincareDistance(p: C, q: C): number {
  const num = cabs(csub(p, q));
  const den = cabs(csub(c(1), cmul(conj(p), q)));
  return 2 * Math.atanh(Math.min(num / den, 1 - 1e-16));
}

export interface Arc {
  kind: "segment" | "arc";
  p: C;
  q: C;
  center?: C;
  radius?: number;
  sweep?: number;
}

/**
 * Geodesic between two disk points: a diameter segment when collinear
 * with the origin, otherwise the circle orthogonal to the unit circle.
 */
export function geodesic(p: C, q: C): Arc {
  const cross = p.re * q.im - p.im * q.re;
  if (Math.abs(cross) < 1e-12) return { kind: "segment", p, q };
  const p2 = (p.re * p.re + p.im * p.im + 1) / 2;
  const q2 = (q.re * q.re + q.im * q.im + 1) / 2;
  // solve center . p = p2, center . q = q2 (orthogonal-circle conditions)
  const cx = (p2 * q.im - q2 * p.im) / cross;
  const cy = (q2 * p.re - p2 * q.re) / cross;
  const center = c(cx, cy);
  return {
    kind: "arc",
    p,
    q,
    center,
    radius: cabs(csub(p, center)),
    sweep: cross > 0 ? 0 : 1,
  };
}
