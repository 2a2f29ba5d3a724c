/**
 * SVG scene construction: one bubble per topic area, one dogeared
 * document glyph per publication, labels at area centroids.
 */

import type { AreaPayload, DocumentPayload, MapPayload } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

export interface ViewBox {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface Scene {
  svg: SVGSVGElement;
  bubbles: Map<number, SVGGElement>;
  glyphs: Map<string, SVGGElement>;
  /** the overview framing; zooming never mutates it */
  overview: ViewBox;
}

export function viewBoxString(box: ViewBox): string {
  return `${box.x} ${box.y} ${box.width} ${box.height}`;
}

/** Overview framing: all bubbles plus 5% margin. */
export function overviewBox(areas: AreaPayload[]): ViewBox {
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  for (const area of areas) {
    minX = Math.min(minX, area.centroid[0] - area.radius);
    minY = Math.min(minY, area.centroid[1] - area.radius);
    maxX = Math.max(maxX, area.centroid[0] + area.radius);
    maxY = Math.max(maxY, area.centroid[1] + area.radius);
  }
  const margin = 0.05 * Math.max(maxX - minX, maxY - minY);
  return {
    x: minX - margin,
    y: minY - margin,
    width: maxX - minX + 2 * margin,
    height: maxY - minY + 2 * margin,
  };
}

/**
 * Dogear path for a document glyph: a page with a folded top-right corner,
 * inscribed in the collision circle of the given radius (half-diagonal
 * equals the radius, so drawn glyphs respect the layout's spacing).
 */
export function dogearPath(x: number, y: number, radius: number): string {
  const w = 1.2 * radius;
  const h = 1.6 * radius;
  const fold = 0.35 * w;
  const left = x - w / 2;
  const top = y - h / 2;
  const right = x + w / 2;
  const bottom = y + h / 2;
  return [
    `M ${left} ${top}`,
    `L ${right - fold} ${top}`,
    `L ${right} ${top + fold}`,
    `L ${right} ${bottom}`,
    `L ${left} ${bottom}`,
    'Z',
    `M ${right - fold} ${top}`,
    `L ${right - fold} ${top + fold}`,
    `L ${right} ${top + fold}`,
  ].join(' ');
}

function makeBubble(doc: Document, area: AreaPayload): SVGGElement {
  const group = doc.createElementNS(SVG_NS, 'g') as SVGGElement;
  group.setAttribute('class', 'area-bubble');
  group.dataset.areaIndex = String(area.index);

  const circle = doc.createElementNS(SVG_NS, 'circle');
  circle.setAttribute('cx', String(area.centroid[0]));
  circle.setAttribute('cy', String(area.centroid[1]));
  circle.setAttribute('r', String(area.radius));
  circle.setAttribute('class', 'bubble');
  group.appendChild(circle);

  const label = doc.createElementNS(SVG_NS, 'text');
  label.setAttribute('x', String(area.centroid[0]));
  label.setAttribute('y', String(area.centroid[1]));
  label.setAttribute('class', 'area-label');
  label.setAttribute('text-anchor', 'middle');
  label.setAttribute('font-size', String(Math.max(area.radius * 0.14, 1)));
  label.textContent = area.label;
  group.appendChild(label);

  return group;
}

function makeGlyph(doc: Document, document: DocumentPayload): SVGGElement {
  const group = doc.createElementNS(SVG_NS, 'g') as SVGGElement;
  group.setAttribute('class', 'doc-glyph');
  group.dataset.docId = document.doc_id;
  group.dataset.areaIndex = String(document.area);

  const path = doc.createElementNS(SVG_NS, 'path');
  path.setAttribute('d', dogearPath(document.x, document.y, document.radius));
  path.setAttribute('class', 'dogear');
  group.appendChild(path);

  // per-document title, revealed when the containing area is zoomed
  const title = doc.createElementNS(SVG_NS, 'text');
  title.setAttribute('x', String(document.x));
  title.setAttribute('y', String(document.y + document.radius * 1.1));
  title.setAttribute('class', 'doc-title hidden');
  title.setAttribute('text-anchor', 'middle');
  title.setAttribute('font-size', String(Math.max(document.radius * 0.3, 0.5)));
  title.textContent = document.title;
  group.appendChild(title);

  return group;
}

/**
 * Build the SVG scene for a validated payload inside `container`.
 *
 * Purely a projection of the payload: every bubble radius, glyph size, and
 * position is read from it verbatim.
 */
export function renderMap(payload: MapPayload, container: HTMLElement): Scene {
  const doc = container.ownerDocument;
  const svg = doc.createElementNS(SVG_NS, 'svg') as SVGSVGElement;
  const overview = overviewBox(payload.areas);
  svg.setAttribute('viewBox', viewBoxString(overview));
  svg.setAttribute('class', 'domain-map');
  svg.setAttribute('width', '100%');
  svg.setAttribute('height', '100%');

  const bubbles = new Map<number, SVGGElement>();
  const bubbleLayer = doc.createElementNS(SVG_NS, 'g');
  bubbleLayer.setAttribute('class', 'bubble-layer');
  for (const area of payload.areas) {
    const bubble = makeBubble(doc, area);
    bubbleLayer.appendChild(bubble);
    bubbles.set(area.index, bubble);
  }
  svg.appendChild(bubbleLayer);

  const glyphs = new Map<string, SVGGElement>();
  const glyphLayer = doc.createElementNS(SVG_NS, 'g');
  glyphLayer.setAttribute('class', 'glyph-layer');
  for (const document of payload.documents) {
    const glyph = makeGlyph(doc, document);
    glyphLayer.appendChild(glyph);
    glyphs.set(document.doc_id, glyph);
  }
  svg.appendChild(glyphLayer);

  container.appendChild(svg);
  return { svg, bubbles, glyphs, overview };
}

/** Visible error panel for rejected payloads; names the offending field. */
export function renderErrorPanel(container: HTMLElement, field: string, message: string): HTMLElement {
  const doc = container.ownerDocument;
  const panel = doc.createElement('div');
  panel.setAttribute('class', 'error-panel');
  panel.setAttribute('role', 'alert');
  const heading = doc.createElement('strong');
  heading.textContent = 'Could not load map payload';
  const detail = doc.createElement('p');
  detail.dataset.field = field;
  detail.textContent = `Field ${field}: ${message}`;
  panel.appendChild(heading);
  panel.appendChild(detail);
  container.appendChild(panel);
  return panel;
}
