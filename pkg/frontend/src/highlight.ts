/**
 * Split an occurrence context into before/match/after using the exact
 * offsets the server provided. No searching: the server's span is the
 * single source of truth, so the highlight can never be off by one.
 */

export interface HighlightedContext {
  before: string;
  match: string;
  after: string;
}

export function splitContext(row: {
  context: string;
  contextStart: number;
  start: number;
  end: number;
}): HighlightedContext {
  const from = row.start - row.contextStart;
  const to = row.end - row.contextStart;
  return {
    before: row.context.slice(0, from),
    match: row.context.slice(from, to),
    after: row.context.slice(to),
  };
}
