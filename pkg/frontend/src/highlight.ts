/** Map substitution spans from input-token space onto the output tokens.
 *
 * The service reports substitutions against whitespace-split tokens of the
 * *input*; the output is the same token stream with each substituted span
 * replaced by its (possibly multi-token) dialect form, joined by single
 * spaces. Walking the substitutions left to right with a running shift
 * recovers the exact output token spans, so highlighting never touches the
 * output text itself.
 */

import type { Substitution } from './types.js';

export interface OutputSegment {
  text: string;
  substitution: Substitution | null;
}

function tokenCount(phrase: string): number {
  return phrase.split(/\s+/).filter((t) => t.length > 0).length;
}

/** Split the output into plain and substituted segments, in token order. */
export function segmentOutput(
  output: string,
  substitutions: Substitution[],
): OutputSegment[] {
  const tokens = output.length > 0 ? output.split(' ') : [];
  const segments: OutputSegment[] = [];
  let cursor = 0;
  let shift = 0;
  for (const sub of substitutions) {
    const start = sub.start_token + shift;
    const width = tokenCount(sub.dialect_form);
    if (start < cursor || start + width > tokens.length) {
      // inconsistent span: refuse to guess, render the rest unhighlighted
      break;
    }
    if (start > cursor) {
      segments.push({ text: tokens.slice(cursor, start).join(' '), substitution: null });
    }
    segments.push({ text: tokens.slice(start, start + width).join(' '), substitution: sub });
    cursor = start + width;
    shift += width - (sub.end_token - sub.start_token + 1);
  }
  if (cursor < tokens.length) {
    segments.push({ text: tokens.slice(cursor).join(' '), substitution: null });
  }
  return segments;
}

/** Reassembling the segments must reproduce the output exactly. */
export function segmentsText(segments: OutputSegment[]): string {
  return segments.map((s) => s.text).join(' ');
}
