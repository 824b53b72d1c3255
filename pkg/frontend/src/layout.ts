/**
 * Seeded force-directed layout.
 *
 * Small classroom graphs (tens of nodes) don't justify a layout library,
 * and the explorer needs reproducible pictures: the same graph and seed
 * must land every node on exactly the same coordinates, run after run,
 * so screenshots can be diffed.  This is a plain Fruchterman–Reingold
 * loop — O(n^2) repulsion per iteration — with all randomness drawn from
 * one seeded generator used only for the initial placement.
 */

export interface Point {
  x: number;
  y: number;
}

export interface LayoutOptions {
  seed: number;
  width: number;
  height: number;
  padding?: number;
  iterations?: number;
}

/** Deterministic 32-bit PRNG (mulberry32); good enough for scatter. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

interface Edge {
  src: number;
  dst: number;
}

export function forceLayout(
  n: number,
  ties: ReadonlyArray<Edge>,
  opts: LayoutOptions,
): Point[] {
  const { seed, width, height } = opts;
  const padding = opts.padding ?? 36;
  const iterations = opts.iterations ?? 250;
  if (n === 0) return [];
  if (n === 1) return [{ x: width / 2, y: height / 2 }];

  const rng = mulberry32(seed);
  const px = new Float64Array(n);
  const py = new Float64Array(n);
  // Jittered ring start: spreads nodes evenly so the first repulsion
  // rounds don't have to untangle a random blob.
  const ring = Math.min(width, height) / 3;
  for (let i = 0; i < n; i++) {
    const angle = (2 * Math.PI * i) / n + (rng() - 0.5) * 0.5;
    const radius = ring * (0.6 + 0.4 * rng());
    px[i] = width / 2 + radius * Math.cos(angle);
    py[i] = height / 2 + radius * Math.sin(angle);
  }

  // Treat ties as undirected springs and collapse duplicates so a
  // reciprocal pair doesn't pull twice as hard.
  const springKeys = new Set<number>();
  const springs: Edge[] = [];
  for (const t of ties) {
    if (t.src === t.dst || t.src >= n || t.dst >= n) continue;
    const a = Math.min(t.src, t.dst);
    const b = Math.max(t.src, t.dst);
    const key = a * n + b;
    if (!springKeys.has(key)) {
      springKeys.add(key);
      springs.push({ src: a, dst: b });
    }
  }

  const area = width * height;
  const k = Math.sqrt(area / n);
  const dx = new Float64Array(n);
  const dy = new Float64Array(n);
  let temperature = Math.min(width, height) / 8;
  const cooling = temperature / (iterations + 1);

  for (let iter = 0; iter < iterations; iter++) {
    dx.fill(0);
    dy.fill(0);

    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let vx = px[i]! - px[j]!;
        let vy = py[i]! - py[j]!;
        let d2 = vx * vx + vy * vy;
        if (d2 < 1e-8) {
          // Coincident points: nudge apart along a direction derived
          // from the indices, keeping the run reproducible.
          vx = 0.01 * ((i % 7) - 3 || 1);
          vy = 0.01 * ((j % 5) - 2 || 1);
          d2 = vx * vx + vy * vy;
        }
        const dist = Math.sqrt(d2);
        const force = (k * k) / dist;
        const fx = (vx / dist) * force;
        const fy = (vy / dist) * force;
        dx[i]! += fx;
        dy[i]! += fy;
        dx[j]! -= fx;
        dy[j]! -= fy;
      }
    }

    for (const s of springs) {
      let vx = px[s.src]! - px[s.dst]!;
      let vy = py[s.src]! - py[s.dst]!;
      const dist = Math.sqrt(vx * vx + vy * vy) || 1e-4;
      const force = (dist * dist) / k;
      const fx = (vx / dist) * force;
      const fy = (vy / dist) * force;
      dx[s.src]! -= fx;
      dy[s.src]! -= fy;
      dx[s.dst]! += fx;
      dy[s.dst]! += fy;
    }

    // Weak pull to the centre keeps disconnected components on screen.
    const cx = width / 2;
    const cy = height / 2;
    for (let i = 0; i < n; i++) {
      dx[i]! += (cx - px[i]!) * 0.02;
      dy[i]! += (cy - py[i]!) * 0.02;
    }

    for (let i = 0; i < n; i++) {
      const disp = Math.sqrt(dx[i]! * dx[i]! + dy[i]! * dy[i]!) || 1e-9;
      const step = Math.min(disp, temperature);
      px[i]! += (dx[i]! / disp) * step;
      py[i]! += (dy[i]! / disp) * step;
    }
    temperature -= cooling;
    if (temperature < 0.5) temperature = 0.5;
  }

  return rescale(px, py, n, width, height, padding);
}

/** Fit final coordinates into the padded viewport, preserving shape. */
function rescale(
  px: Float64Array,
  py: Float64Array,
  n: number,
  width: number,
  height: number,
  padding: number,
): Point[] {
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (let i = 0; i < n; i++) {
    if (px[i]! < minX) minX = px[i]!;
    if (px[i]! > maxX) maxX = px[i]!;
    if (py[i]! < minY) minY = py[i]!;
    if (py[i]! > maxY) maxY = py[i]!;
  }
  const spanX = maxX - minX || 1;
  const spanY = maxY - minY || 1;
  const scale = Math.min(
    (width - 2 * padding) / spanX,
    (height - 2 * padding) / spanY,
  );
  const offX = (width - scale * spanX) / 2;
  const offY = (height - scale * spanY) / 2;
  const out: Point[] = [];
  for (let i = 0; i < n; i++) {
    out.push({
      x: offX + (px[i]! - minX) * scale,
      y: offY + (py[i]! - minY) * scale,
    });
  }
  return out;
}
