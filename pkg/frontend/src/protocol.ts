/** Protocol definitions: questions, option labels, flag categories.
 *
 * The texts ship as versioned JSON fixtures generated by the backend;
 * components never hardcode label strings. The option order maps onto
 * the preference scale values in `scaleValues`.
 */

export interface Question {
  dimension_id: string;
  section: "overall" | "listening" | "speaking";
  text: string;
  tooltip: string;
  options: string[];
}

export interface Protocol {
  protocol_id: string;
  version: string;
  scale_values: number[];
  flag_categories: string[];
  flag_note_required: string;
  questions: Question[];
}

export const SECTION_ORDER = ["overall", "listening", "speaking"] as const;

export function parseProtocol(raw: unknown): Protocol {
  const p = raw as Protocol;
  if (!p || !Array.isArray(p.questions) || !Array.isArray(p.scale_values)) {
    throw new Error("malformed protocol payload");
  }
  for (const q of p.questions) {
    if (q.options.length !== p.scale_values.length) {
      throw new Error(`question ${q.dimension_id} has ${q.options.length} options`);
    }
  }
  return p;
}

/** Value for the option at `index` of any question (pure lookup). */
export function optionValue(protocol: Protocol, index: number): number {
  const value = protocol.scale_values[index];
  if (value === undefined) {
    throw new Error(`option index ${index} outside the scale`);
  }
  return value;
}

export function questionsBySection(protocol: Protocol): Map<string, Question[]> {
  const sections = new Map<string, Question[]>();
  for (const name of SECTION_ORDER) sections.set(name, []);
  for (const q of protocol.questions) {
    sections.get(q.section)?.push(q);
  }
  return sections;
}
