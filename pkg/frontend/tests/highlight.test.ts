import { describe, expect, it } from 'vitest';

import { segmentOutput, segmentsText } from '../src/highlight.js';
import type { Substitution } from '../src/types.js';

function sub(start: number, end: number, dialectForm: string, ruleId = 'r'): Substitution {
  return {
    start_token: start,
    end_token: end,
    msa_form: 'msa',
    dialect_form: dialectForm,
    rule_id: ruleId,
  };
}

describe('segmentOutput', () => {
  it('marks single-token substitutions at their output positions', () => {
    const output = 'عايز أن أروح إلى السوق';
    const segments = segmentOutput(output, [sub(0, 0, 'عايز'), sub(2, 2, 'أروح')]);
    expect(segments.map((s) => [s.text, s.substitution !== null])).toEqual([
      ['عايز', true],
      ['أن', false],
      ['أروح', true],
      ['إلى السوق', false],
    ]);
    expect(segmentsText(segments)).toBe(output);
  });

  it('covers a whole-phrase substitution', () => {
    const output = 'الأكل زين';
    const segments = segmentOutput(output, [sub(0, 1, 'الأكل زين')]);
    expect(segments).toHaveLength(1);
    expect(segments[0]?.substitution).not.toBeNull();
    expect(segmentsText(segments)).toBe(output);
  });

  it('shifts later spans when a variant grows the token count', () => {
    // input: A B C D (4 tokens); first span 0..1 -> three tokens, second 3..3 -> one
    const output = 'X Y Z C W';
    const segments = segmentOutput(output, [sub(0, 1, 'X Y Z'), sub(3, 3, 'W')]);
    expect(segments.map((s) => [s.text, s.substitution !== null])).toEqual([
      ['X Y Z', true],
      ['C', false],
      ['W', true],
    ]);
  });

  it('shifts later spans when a variant shrinks the token count', () => {
    // input: A B C D E; span 0..2 -> one token, span 4..4 -> one token
    const output = 'X D W';
    const segments = segmentOutput(output, [sub(0, 2, 'X'), sub(4, 4, 'W')]);
    expect(segments.map((s) => [s.text, s.substitution !== null])).toEqual([
      ['X', true],
      ['D', false],
      ['W', true],
    ]);
  });

  it('keeps attached punctuation inside the highlighted token', () => {
    const output = 'عايز.';
    const segments = segmentOutput(output, [sub(0, 0, 'عايز')]);
    // the span is one token wide; the token carries its punctuation
    expect(segments).toEqual([{ text: 'عايز.', substitution: sub(0, 0, 'عايز') }]);
  });

  it('returns one plain segment when nothing was substituted', () => {
    const output = 'إلى السوق';
    expect(segmentOutput(output, [])).toEqual([{ text: output, substitution: null }]);
  });

  it('handles empty output', () => {
    expect(segmentOutput('', [])).toEqual([]);
  });

  it('never throws on inconsistent spans and preserves the text', () => {
    const output = 'a b';
    const segments = segmentOutput(output, [sub(5, 9, 'x y z')]);
    expect(segmentsText(segments)).toBe(output);
    expect(segments.every((s) => s.substitution === null)).toBe(true);
  });
});
