/** Steering view: selectors, input box, highlighted output, score badge.
 *
 * One request in flight at a time; a resubmit aborts the previous request,
 * so the output pane always reflects the latest completed submission. The
 * rendered output text equals the service's `output` field exactly.
 */

import { DEFAULT_BASE_URL, ServiceError, fetchRegions, steer } from './api.js';
import { segmentOutput } from './highlight.js';
import type { SteerResponse } from './types.js';

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function option(value: string): HTMLOptionElement {
  const node = document.createElement('option');
  node.value = value;
  node.textContent = value;
  return node;
}

export class SteerApp {
  readonly baseUrl: string;

  readonly input = el('textarea', 'steer-input');
  readonly regionSelect = el('select', 'region-select');
  readonly contextSelect = el('select', 'context-select');
  readonly registerSelect = el('select', 'register-select');
  readonly submitButton = el('button', 'submit', 'Steer');
  readonly errorPane = el('div', 'error hidden');
  readonly outputPane = el('div', 'output-pane');
  readonly badge = el('span', 'badge hidden');
  readonly substitutionList = el('ul', 'substitution-list');

  private inflight: AbortController | null = null;

  constructor(root: HTMLElement, baseUrl: string = DEFAULT_BASE_URL) {
    this.baseUrl = baseUrl;
    this.input.dir = 'auto';
    this.input.placeholder = 'Sentence to dialectalize…';
    this.outputPane.dir = 'rtl';
    this.outputPane.lang = 'ar';

    const controls = el('div', 'controls');
    for (const [label, select] of [
      ['Region', this.regionSelect],
      ['Context', this.contextSelect],
      ['Register', this.registerSelect],
    ] as const) {
      const wrap = el('label', 'control');
      wrap.append(el('span', 'control-label', label), select);
      controls.append(wrap);
    }
    controls.append(this.submitButton);

    const outputHeader = el('div', 'output-header');
    outputHeader.append(el('span', undefined, 'Output'), this.badge);

    root.append(this.input, controls, this.errorPane, outputHeader,
      this.outputPane, this.substitutionList);

    this.submitButton.addEventListener('click', () => void this.submit());
  }

  /** Fill the selectors with exactly the labels the service reports. */
  async loadInventory(): Promise<void> {
    try {
      const inventory = await fetchRegions(this.baseUrl);
      this.regionSelect.replaceChildren(...inventory.regions.map(option));
      this.contextSelect.replaceChildren(...inventory.contexts.map(option));
      this.registerSelect.replaceChildren(...inventory.registers.map(option));
      if (inventory.registers.includes('Informal')) {
        this.registerSelect.value = 'Informal';
      }
      this.hideError();
    } catch (error) {
      this.showError(error);
    }
  }

  async submit(): Promise<void> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    this.submitButton.disabled = true;
    try {
      const response = await steer(this.baseUrl, {
        text: this.input.value,
        region: this.regionSelect.value,
        context: this.contextSelect.value,
        register: this.registerSelect.value,
      }, controller.signal);
      if (this.inflight !== controller) return; // a newer request took over
      this.render(response);
      this.hideError();
    } catch (error) {
      if (controller.signal.aborted) return; // superseded, keep current view
      this.showError(error);
    } finally {
      if (this.inflight === controller) {
        this.inflight = null;
        this.submitButton.disabled = false;
      }
    }
  }

  private render(response: SteerResponse): void {
    this.outputPane.replaceChildren();
    for (const segment of segmentOutput(response.output, response.substitutions)) {
      if (this.outputPane.childNodes.length > 0) {
        this.outputPane.append(document.createTextNode(' '));
      }
      if (segment.substitution === null) {
        this.outputPane.append(document.createTextNode(segment.text));
      } else {
        const mark = el('mark', 'sub', segment.text);
        mark.title = `${segment.substitution.msa_form} → ${segment.substitution.dialect_form}`;
        this.outputPane.append(mark);
      }
    }
    this.badge.textContent = `authenticity ${response.authenticity}/5`;
    this.badge.classList.remove('hidden');
    this.badge.dataset.score = String(response.authenticity);
    this.substitutionList.replaceChildren(
      ...response.substitutions.map((sub) => {
        const item = el('li', 'substitution',
          `${sub.rule_id}: ${sub.msa_form} → ${sub.dialect_form}`);
        item.title = `tokens ${sub.start_token}–${sub.end_token}`;
        return item;
      }),
    );
  }

  private showError(error: unknown): void {
    const message = error instanceof ServiceError
      ? `service error: ${error.message}`
      : 'service unreachable — is `forge serve` running?';
    this.errorPane.textContent = message;
    this.errorPane.classList.remove('hidden');
  }

  private hideError(): void {
    this.errorPane.textContent = '';
    this.errorPane.classList.add('hidden');
  }
}

export async function mountApp(
  root: HTMLElement,
  baseUrl: string = DEFAULT_BASE_URL,
): Promise<SteerApp> {
  const app = new SteerApp(root, baseUrl);
  await app.loadInventory();
  return app;
}
