import { describe, expect, it } from 'vitest';

import { CompareSelection, SessionHistory } from '../src/history.js';
import type { PredictResponse } from '../src/types.js';

function response(decision: string): PredictResponse {
  return {
    decision_label: decision,
    decision_scores: { [decision]: 0.8, other: 0.2 },
    unanimity_label: 'unanimity',
    unanimity_scores: { unanimity: 0.9, 'not-unanimity': 0.1 },
    preprocessed_token_count: 5,
    oov_flag: false,
  };
}

describe('SessionHistory', () => {
  it('is append-only and pairs one request with one response', () => {
    const history = new SessionHistory();
    const first = history.add('texto a', response('yes'));
    const second = history.add('texto b', response('no'));
    expect(history.size).toBe(2);
    expect(history.all().map((entry) => entry.id)).toEqual([first.id, second.id]);
    expect(history.get(first.id)?.submittedText).toBe('texto a');
    expect(history.get(first.id)?.response.decision_label).toBe('yes');
    expect(history.get(second.id)?.response.decision_label).toBe('no');
    // Re-submitting identical text appends a new entry rather than mutating.
    history.add('texto a', response('partial'));
    expect(history.size).toBe(3);
    expect(history.get(first.id)?.response.decision_label).toBe('yes');
  });
});

describe('CompareSelection', () => {
  it('exposes a pair only when exactly two entries are ticked', () => {
    const selection = new CompareSelection();
    expect(selection.pair).toBeNull();
    selection.toggle(1);
    expect(selection.pair).toBeNull();
    selection.toggle(2);
    expect(selection.pair).toEqual([1, 2]);
    selection.toggle(2);
    expect(selection.pair).toBeNull();
  });

  it('keeps at most the two most recent selections', () => {
    const selection = new CompareSelection();
    selection.toggle(1);
    selection.toggle(2);
    selection.toggle(3);
    expect(selection.pair).toEqual([2, 3]);
    expect(selection.has(1)).toBe(false);
  });
});
