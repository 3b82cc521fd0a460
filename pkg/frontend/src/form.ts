/** Rating-form state: answers, section gating, and flag validation.
 *
 * Questions stay locked until both candidate videos have been played at
 * least once; submission unlocks only with every visible question
 * answered. Flags bypass the answer requirement (that is their point)
 * but the catch-all category demands a justification note.
 */

import { optionValue, Protocol } from "./protocol.js";

export interface FlagDraft {
  categories: string[];
  note: string;
}

export class RatingForm {
  private answers = new Map<string, number>(); // dimension -> option index

  constructor(
    private protocol: Protocol,
    private videosPlayed: () => boolean,
  ) {}

  sectionsUnlocked(): boolean {
    return this.videosPlayed();
  }

  answer(dimensionId: string, optionIndex: number): void {
    if (!this.sectionsUnlocked()) {
      throw new Error("play both candidate videos before answering");
    }
    const question = this.protocol.questions.find((q) => q.dimension_id === dimensionId);
    if (!question) throw new Error(`unknown dimension ${dimensionId}`);
    if (optionIndex < 0 || optionIndex >= question.options.length) {
      throw new Error(`option ${optionIndex} out of range for ${dimensionId}`);
    }
    this.answers.set(dimensionId, optionIndex);
  }

  answeredCount(): number {
    return this.answers.size;
  }

  missingDimensions(): string[] {
    return this.protocol.questions
      .map((q) => q.dimension_id)
      .filter((dim) => !this.answers.has(dim));
  }

  isComplete(): boolean {
    return this.missingDimensions().length === 0;
  }

  /** Value-mapped responses, ready to POST. Throws when incomplete. */
  toResponses(): { dimension_id: string; value: number }[] {
    const missing = this.missingDimensions();
    if (missing.length > 0) {
      throw new Error(`unanswered questions: ${missing.join(", ")}`);
    }
    return this.protocol.questions.map((q) => ({
      dimension_id: q.dimension_id,
      value: optionValue(this.protocol, this.answers.get(q.dimension_id)!),
    }));
  }

  validateFlag(draft: FlagDraft): string | null {
    if (draft.categories.length === 0) return "select at least one reason";
    for (const category of draft.categories) {
      if (!this.protocol.flag_categories.includes(category)) {
        return `unknown category: ${category}`;
      }
    }
    if (
      draft.categories.includes(this.protocol.flag_note_required) &&
      draft.note.trim() === ""
    ) {
      return "please provide justification for why you are flagging this clip";
    }
    return null;
  }
}
