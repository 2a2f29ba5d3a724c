/**
 * Cosmetic settling animation.
 *
 * Glyphs start from seeded jittered positions and ease toward the
 * payload's authoritative coordinates; physics never re-runs client-side,
 * so the final frame of any two renderings of the same payload is
 * identical.
 */

import type { DocumentPayload } from './types.js';

/** mulberry32: tiny deterministic PRNG, enough for visual jitter. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export interface SettlingGlyph {
  docId: string;
  startX: number;
  startY: number;
  targetX: number;
  targetY: number;
  x: number;
  y: number;
}

export interface Settling {
  glyphs: SettlingGlyph[];
  /** elapsed / duration in [0, 1]; 1 means done */
  progress: number;
  done: boolean;
}

/** Smoothstep easing: gentle start, gentle stop. */
function ease(t: number): number {
  return t * t * (3 - 2 * t);
}

export function startSettling(
  documents: DocumentPayload[],
  jitterSeed: number,
  jitterScale: number,
): Settling {
  const rand = mulberry32(jitterSeed);
  const glyphs = documents.map((doc) => {
    const angle = 2 * Math.PI * rand();
    const distance = jitterScale * (0.5 + rand());
    const startX = doc.x + distance * Math.cos(angle);
    const startY = doc.y + distance * Math.sin(angle);
    return {
      docId: doc.doc_id,
      startX,
      startY,
      targetX: doc.x,
      targetY: doc.y,
      x: startX,
      y: startY,
    };
  });
  return { glyphs, progress: 0, done: false };
}

/**
 * Advance the animation by a fraction of its duration. At progress >= 1
 * every glyph sits exactly on its payload position.
 */
export function tickSettling(settling: Settling, progressDelta: number): Settling {
  const progress = Math.min(1, settling.progress + progressDelta);
  const eased = ease(progress);
  for (const glyph of settling.glyphs) {
    if (progress >= 1) {
      glyph.x = glyph.targetX;
      glyph.y = glyph.targetY;
    } else {
      glyph.x = glyph.startX + (glyph.targetX - glyph.startX) * eased;
      glyph.y = glyph.startY + (glyph.targetY - glyph.startY) * eased;
    }
  }
  settling.progress = progress;
  settling.done = progress >= 1;
  return settling;
}
