/**
 * Browser entry point: fetch the map payload (from the `map` query
 * parameter or ./map.json next to the page) and run the viewer with a
 * requestAnimationFrame-driven settling phase.
 */

import { renderErrorPanel } from './scene.js';
import { mountViewer } from './view.js';

export async function bootstrap(root: HTMLElement, win: Window): Promise<void> {
  const params = new URLSearchParams(win.location.search);
  const source = params.get('map') ?? 'map.json';
  let data: unknown;
  try {
    const response = await win.fetch(source);
    if (!response.ok) {
      throw new Error(`${response.status} ${response.statusText}`);
    }
    data = await response.json();
  } catch (error) {
    renderErrorPanel(root, '(fetch)', `could not load ${source}: ${String(error)}`);
    return;
  }

  const viewer = mountViewer(root, data, { jitterSeed: 1 });
  if (!viewer) {
    return;
  }

  let last = win.performance.now();
  const frame = (now: number) => {
    viewer.tick(now - last);
    last = now;
    if (viewer.state.phase === 'settling') {
      win.requestAnimationFrame(frame);
    }
  };
  win.requestAnimationFrame(frame);
}

declare global {
  interface Window {
    coreadmapBootstrapped?: boolean;
  }
}

if (typeof window !== 'undefined' && typeof document !== 'undefined' && !window.coreadmapBootstrapped) {
  window.coreadmapBootstrapped = true;
  const root = document.getElementById('map-root');
  if (root) {
    void bootstrap(root, window);
  }
}
