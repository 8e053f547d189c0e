import { ApiRequestError, getHealth, predict } from './api.js';
import { shortHash } from './format.js';
import { CompareSelection, SessionHistory } from './history.js';
import {
  renderComparison,
  renderError,
  renderHistoryList,
  renderResultCard,
} from './render.js';

const APP_TEMPLATE = `
  <header class="app-header">
    <h1>Case outcome explorer</h1>
    <p class="health" data-region="health">checking service…</p>
  </header>
  <section class="draft">
    <form data-region="draft-form">
      <label for="description">Case description</label>
      <textarea id="description" name="description" rows="6"
        placeholder="Paste or type the case description (ementa)…"></textarea>
      <div class="draft-controls">
        <button type="submit" data-region="submit">Predict</button>
        <span class="validation" data-region="validation"></span>
      </div>
    </form>
    <div data-region="banner"></div>
  </section>
  <section class="result" data-region="result"></section>
  <section class="history">
    <h2>This session</h2>
    <div data-region="history"></div>
    <button type="button" data-region="compare" disabled>Compare selected</button>
    <div data-region="comparison"></div>
  </section>
`;

export interface AppHandles {
  readonly history: SessionHistory;
  /** Submit the current draft; resolves after the DOM settles. */
  submit(): Promise<void>;
  setDraft(text: string): void;
}

export function initApp(root: HTMLElement, baseUrl = ''): AppHandles {
  root.innerHTML = APP_TEMPLATE;
  const region = (name: string): HTMLElement => {
    const found = root.querySelector<HTMLElement>(`[data-region="${name}"]`);
    if (!found) throw new Error(`missing app region ${name}`);
    return found;
  };

  const form = region('draft-form') as unknown as HTMLFormElement;
  const textarea = root.querySelector<HTMLTextAreaElement>('#description')!;
  const submitButton = region('submit') as HTMLButtonElement;
  const compareButton = region('compare') as HTMLButtonElement;
  const history = new SessionHistory();
  const selection = new CompareSelection();
  let inFlight = false;

  void refreshHealth();

  async function refreshHealth(): Promise<void> {
    try {
      const health = await getHealth(baseUrl);
      region('health').textContent =
        health.status === 'ok'
          ? `service ok · models ${shortHash(health.decision_model_sha256)} / ` +
            `${shortHash(health.unanimity_model_sha256)}`
          : `service ${health.status}`;
    } catch {
      region('health').textContent = 'service unreachable';
    }
  }

  function renderHistory(): void {
    region('history').innerHTML = renderHistoryList(history.all(), (id) => selection.has(id));
    compareButton.disabled = selection.pair === null;
    for (const box of root.querySelectorAll<HTMLInputElement>('input.history-compare')) {
      box.addEventListener('change', () => {
        selection.toggle(Number(box.value));
        renderHistory();
      });
    }
  }

  async function submitDraft(): Promise<void> {
    const text = textarea.value;
    region('banner').innerHTML = '';
    if (!text.trim()) {
      region('validation').textContent = 'Enter a case description first.';
      return;
    }
    region('validation').textContent = '';
    if (inFlight) return;
    inFlight = true;
    submitButton.disabled = true;
    try {
      const response = await predict(baseUrl, text);
      const entry = history.add(text, response);
      region('result').innerHTML = renderResultCard(entry);
      renderHistory();
    } catch (error) {
      // The draft text stays in the textarea untouched.
      if (error instanceof ApiRequestError) {
        region('banner').innerHTML = renderError(error.message, error.retryable);
      } else {
        region('banner').innerHTML = renderError('network error: the service did not respond', true);
      }
      const retry = root.querySelector<HTMLButtonElement>('.retry-button');
      retry?.addEventListener('click', () => void submitDraft());
    } finally {
      inFlight = false;
      submitButton.disabled = false;
    }
  }

  form.addEventListener('submit', (event) => {
    event.preventDefault();
    void submitDraft();
  });

  compareButton.addEventListener('click', () => {
    const pair = selection.pair;
    if (!pair) return;
    const left = history.get(pair[0]);
    const right = history.get(pair[1]);
    if (left && right) {
      region('comparison').innerHTML = renderComparison(left, right);
    }
  });

  renderHistory();

  return {
    history,
    submit: submitDraft,
    setDraft: (text: string) => {
      textarea.value = text;
    },
  };
}
