/**
 * View state and interaction: settling gate, area zoom, document details.
 *
 * Interaction is disabled until the settling animation completes; after
 * that, clicking an area zooms the viewport to its padded bounding box and
 * reveals member titles, clicking a document opens its metadata panel, and
 * reset restores the overview framing.
 */

import { dogearPath, renderErrorPanel, renderMap, viewBoxString } from './scene.js';
import type { Scene, ViewBox } from './scene.js';
import { startSettling, tickSettling } from './settle.js';
import type { Settling } from './settle.js';
import { parseMapPayload, PayloadError } from './types.js';
import type { AreaPayload, DocumentPayload, MapPayload } from './types.js';

export type ZoomTarget =
  | { kind: 'none' }
  | { kind: 'area'; index: number }
  | { kind: 'doc'; docId: string };

export type AnimationPhase = 'settling' | 'interactive';

export interface ViewState {
  payload: MapPayload;
  zoom: ZoomTarget;
  phase: AnimationPhase;
}

/** Zoom contract: the bubble's bounding box padded by 10% of its radius. */
export function areaZoomBox(area: AreaPayload): ViewBox {
  const pad = 0.1 * area.radius;
  return {
    x: area.centroid[0] - area.radius - pad,
    y: area.centroid[1] - area.radius - pad,
    width: 2 * (area.radius + pad),
    height: 2 * (area.radius + pad),
  };
}

export interface ViewerOptions {
  jitterSeed?: number;
  /** jitter distance in map units; defaults to 15% of the overview size */
  jitterScale?: number;
  /** animation length in milliseconds */
  settleDurationMs?: number;
}

export class MapViewer {
  readonly scene: Scene;

  readonly detailPanel: HTMLElement;

  private readonly payload: MapPayload;

  private readonly areasByIndex: Map<number, AreaPayload>;

  private readonly documentsById: Map<string, DocumentPayload>;

  private readonly settleDurationMs: number;

  private settling: Settling;

  private zoomTarget: ZoomTarget = { kind: 'none' };

  constructor(container: HTMLElement, payload: MapPayload, options: ViewerOptions = {}) {
    this.payload = payload;
    this.scene = renderMap(payload, container);
    this.areasByIndex = new Map(payload.areas.map((a) => [a.index, a]));
    this.documentsById = new Map(payload.documents.map((d) => [d.doc_id, d]));
    this.settleDurationMs = options.settleDurationMs ?? 2000;

    const doc = container.ownerDocument;
    this.detailPanel = doc.createElement('aside');
    this.detailPanel.setAttribute('class', 'detail-panel hidden');
    container.appendChild(this.detailPanel);

    const jitterScale =
      options.jitterScale ??
      0.15 * Math.max(this.scene.overview.width, this.scene.overview.height);
    this.settling = startSettling(payload.documents, options.jitterSeed ?? 1, jitterScale);
    this.tick(0); // paint the jittered start frame

    this.scene.svg.addEventListener('click', (event) => this.dispatchClick(event));
  }

  get state(): ViewState {
    return {
      payload: this.payload,
      zoom: this.zoomTarget,
      phase: this.settling.done ? 'interactive' : 'settling',
    };
  }

  /** Advance the settling animation; drives glyph positions until done. */
  tick(elapsedMs: number): void {
    if (this.settling.done) {
      return;
    }
    tickSettling(this.settling, this.settleDurationMs > 0 ? elapsedMs / this.settleDurationMs : 1);
    for (const glyph of this.settling.glyphs) {
      const group = this.scene.glyphs.get(glyph.docId);
      const doc = this.documentsById.get(glyph.docId);
      if (!group || !doc) {
        continue;
      }
      const path = group.querySelector('path.dogear');
      path?.setAttribute('d', dogearPath(glyph.x, glyph.y, doc.radius));
    }
    if (this.settling.done) {
      this.scene.svg.classList.add('interactive');
    }
  }

  /** Run the animation to completion immediately (also used by tests). */
  finishSettling(): void {
    this.tick(this.settleDurationMs > 0 ? this.settleDurationMs : 1);
  }

  clickArea(index: number): ViewState {
    if (!this.settling.done || !this.areasByIndex.has(index)) {
      return this.state;
    }
    this.zoomTarget = { kind: 'area', index };
    const area = this.areasByIndex.get(index)!;
    this.scene.svg.setAttribute('viewBox', viewBoxString(areaZoomBox(area)));
    this.revealTitles(index);
    this.hideDetail();
    return this.state;
  }

  clickDocument(docId: string): ViewState {
    if (!this.settling.done || !this.documentsById.has(docId)) {
      return this.state;
    }
    this.zoomTarget = { kind: 'doc', docId };
    this.showDetail(this.documentsById.get(docId)!);
    return this.state;
  }

  reset(): ViewState {
    if (!this.settling.done) {
      return this.state;
    }
    this.zoomTarget = { kind: 'none' };
    this.scene.svg.setAttribute('viewBox', viewBoxString(this.scene.overview));
    this.revealTitles(null);
    this.hideDetail();
    return this.state;
  }

  private dispatchClick(event: Event): void {
    const target = event.target as Element | null;
    const glyph = target?.closest('.doc-glyph') as SVGGElement | null;
    if (glyph?.dataset.docId) {
      this.clickDocument(glyph.dataset.docId);
      return;
    }
    const bubble = target?.closest('.area-bubble') as SVGGElement | null;
    if (bubble?.dataset.areaIndex) {
      this.clickArea(Number(bubble.dataset.areaIndex));
      return;
    }
    this.reset();
  }

  private revealTitles(areaIndex: number | null): void {
    for (const [docId, group] of this.scene.glyphs) {
      const doc = this.documentsById.get(docId);
      const title = group.querySelector('text.doc-title');
      if (!doc || !title) {
        continue;
      }
      if (areaIndex !== null && doc.area === areaIndex) {
        title.classList.remove('hidden');
      } else {
        title.classList.add('hidden');
      }
    }
  }

  private showDetail(doc: DocumentPayload): void {
    const html = this.detailPanel.ownerDocument;
    this.detailPanel.replaceChildren();
    const title = html.createElement('h2');
    title.textContent = doc.title;
    this.detailPanel.appendChild(title);
    const rows: Array<[string, string]> = [
      ['Year', doc.year === null ? 'unknown' : String(doc.year)],
      ['Journal', doc.journal ?? 'unknown'],
      ['Type', doc.pub_type],
      ['Readers', String(doc.readers)],
    ];
    const list = html.createElement('dl');
    for (const [term, value] of rows) {
      const dt = html.createElement('dt');
      dt.textContent = term;
      const dd = html.createElement('dd');
      dd.textContent = value;
      list.appendChild(dt);
      list.appendChild(dd);
    }
    this.detailPanel.appendChild(list);
    this.detailPanel.classList.remove('hidden');
  }

  private hideDetail(): void {
    this.detailPanel.classList.add('hidden');
    this.detailPanel.replaceChildren();
  }
}

/**
 * Validate raw payload data and mount the viewer; schema violations render
 * a visible error panel naming the offending field instead of a scene.
 */
export function mountViewer(
  container: HTMLElement,
  data: unknown,
  options: ViewerOptions = {},
): MapViewer | null {
  let payload: MapPayload;
  try {
    payload = parseMapPayload(data);
  } catch (error) {
    if (error instanceof PayloadError) {
      renderErrorPanel(container, error.field, error.message);
      return null;
    }
    throw error;
  }
  return new MapViewer(container, payload, options);
}
