// Score formatting helpers. Probabilities arrive summing to 1; the UI only
// converts them to one-decimal percentages, so displayed values for one
// score group always sum to 100 within rounding slack.

export function toPercent(probability: number): number {
  return Math.round(probability * 1000) / 10;
}

export function formatPercent(probability: number): string {
  return `${toPercent(probability).toFixed(1)}%`;
}

/** Highest score first; equal scores fall back to label order. */
export function sortedScores(scores: Record<string, number>): Array<[string, number]> {
  return Object.entries(scores).sort((a, b) => b[1] - a[1] || a[0].localeCompare(b[0]));
}

/** Sum of the percentages as displayed (after rounding). */
export function displayedPercentSum(scores: Record<string, number>): number {
  const total = Object.values(scores).reduce((sum, p) => sum + toPercent(p), 0);
  return Math.round(total * 10) / 10;
}

export function shortHash(hash: string | null): string {
  return hash ? hash.slice(0, 12) : 'n/a';
}
