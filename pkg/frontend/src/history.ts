import type { PredictResponse } from './types.js';

export interface HistoryEntry {
  readonly id: number;
  readonly submittedText: string;
  readonly response: PredictResponse;
}

/**
 * Session-local, append-only record of submitted drafts and their responses.
 * Nothing is persisted: legal drafts are sensitive and live only in the tab.
 */
export class SessionHistory {
  private readonly entries: HistoryEntry[] = [];
  private nextId = 1;

  add(submittedText: string, response: PredictResponse): HistoryEntry {
    const entry: HistoryEntry = { id: this.nextId++, submittedText, response };
    this.entries.push(entry);
    return entry;
  }

  all(): readonly HistoryEntry[] {
    return this.entries;
  }

  get(id: number): HistoryEntry | undefined {
    return this.entries.find((entry) => entry.id === id);
  }

  get size(): number {
    return this.entries.length;
  }
}

/** Tracks which history entries are ticked for the side-by-side view. */
export class CompareSelection {
  private readonly selected: number[] = [];

  toggle(id: number): void {
    const at = this.selected.indexOf(id);
    if (at >= 0) {
      this.selected.splice(at, 1);
    } else {
      this.selected.push(id);
      if (this.selected.length > 2) this.selected.shift();
    }
  }

  has(id: number): boolean {
    return this.selected.includes(id);
  }

  get pair(): [number, number] | null {
    return this.selected.length === 2 ? [this.selected[0]!, this.selected[1]!] : null;
  }
}
