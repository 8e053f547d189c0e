import { formatPercent, sortedScores, toPercent } from './format.js';
import type { HistoryEntry } from './history.js';
import type { PredictResponse } from './types.js';

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;')
    .replace(/'/g, '&#39;');
}

export function renderScoreBars(scores: Record<string, number>, group: string): string {
  const rows = sortedScores(scores)
    .map(([label, probability]) => {
      const width = toPercent(probability);
      return `
      <div class="score-row" data-group="${escapeHtml(group)}" data-score="${probability}">
        <span class="score-label">${escapeHtml(label)}</span>
        <span class="score-track"><span class="score-fill" style="width:${width}%"></span></span>
        <span class="score-value">${formatPercent(probability)}</span>
      </div>`;
    })
    .join('');
  return `<div class="score-bars">${rows}</div>`;
}

export function renderResultCard(entry: HistoryEntry): string {
  const { response } = entry;
  const oovBadge = response.oov_flag
    ? '<span class="badge badge-warn" data-field="oov">no known terms: uniform scores</span>'
    : '';
  return `
  <article class="result-card" data-entry-id="${entry.id}">
    <p class="submitted-text">${escapeHtml(entry.submittedText)}</p>
    <section class="prediction">
      <h3>Decision: <strong data-field="decision-label">${escapeHtml(response.decision_label)}</strong></h3>
      ${renderScoreBars(response.decision_scores, 'decision')}
    </section>
    <section class="prediction">
      <h3>Unanimity: <strong data-field="unanimity-label">${escapeHtml(response.unanimity_label)}</strong></h3>
      ${renderScoreBars(response.unanimity_scores, 'unanimity')}
    </section>
    <footer class="card-meta">
      <span data-field="token-count">${response.preprocessed_token_count} tokens used</span>
      ${oovBadge}
    </footer>
  </article>`;
}

export function renderComparison(left: HistoryEntry, right: HistoryEntry): string {
  return `
  <div class="comparison">
    <div class="comparison-pane">${renderResultCard(left)}</div>
    <div class="comparison-pane">${renderResultCard(right)}</div>
  </div>`;
}

export function renderHistoryList(
  entries: readonly HistoryEntry[],
  isSelected: (id: number) => boolean,
): string {
  if (entries.length === 0) {
    return '<p class="history-empty">No submissions yet.</p>';
  }
  const items = entries
    .map((entry) => {
      const checked = isSelected(entry.id) ? ' checked' : '';
      const snippet = entry.submittedText.length > 80
        ? `${entry.submittedText.slice(0, 80)}…`
        : entry.submittedText;
      return `
      <li class="history-item" data-entry-id="${entry.id}">
        <label>
          <input type="checkbox" class="history-compare" value="${entry.id}"${checked}>
          <span class="history-labels">${escapeHtml(entry.response.decision_label)} /
            ${escapeHtml(entry.response.unanimity_label)}</span>
          <span class="history-snippet">${escapeHtml(snippet)}</span>
        </label>
      </li>`;
    })
    .join('');
  return `<ul class="history-list">${items}</ul>`;
}

export function renderError(message: string, retryable: boolean): string {
  const retry = retryable
    ? ' <button type="button" class="retry-button">Retry</button>'
    : '';
  const tone = retryable ? 'banner-retry' : 'banner-error';
  return `<div class="banner ${tone}" role="alert">${escapeHtml(message)}${retry}</div>`;
}
