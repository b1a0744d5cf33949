/**
 * Screen state helpers, kept free of DOM access so the exam, review and
 * policy flows can be tested without a browser.
 */

import type { PendingSubmission, PolicyDoc } from "./api.js";

/** answer submissions are blocked client-side when the text is empty */
export function validateAnswer(text: string): string | null {
  if (text.trim().length === 0) {
    return "الرجاء كتابة إجابة قبل الإرسال.";
  }
  return null;
}

export interface ExamProgress {
  questionIndex: number;
  totalQuestions: number;
  finished: boolean;
}

export function startProgress(totalQuestions: number): ExamProgress {
  return { questionIndex: 0, totalQuestions, finished: totalQuestions === 0 };
}

/** advance after a graded answer; finishes past the last question */
export function advanceProgress(progress: ExamProgress): ExamProgress {
  const next = progress.questionIndex + 1;
  return {
    questionIndex: Math.min(next, progress.totalQuestions),
    totalQuestions: progress.totalQuestions,
    finished: next >= progress.totalQuestions,
  };
}

/** drop one entry after its review was accepted (or turned out done, 409) */
export function removeFromQueue(
  pending: PendingSubmission[],
  submissionId: string,
): PendingSubmission[] {
  return pending.filter((entry) => entry.submission_id !== submissionId);
}

export function validateFinalPoints(raw: string, maxPoints: number): string | null {
  const value = Number(raw);
  if (raw.trim() === "" || Number.isNaN(value)) {
    return "العلامة النهائية مطلوبة.";
  }
  if (value < 0 || value > maxPoints) {
    return `العلامة يجب أن تكون بين 0 و ${maxPoints}.`;
  }
  return null;
}

/** turn the policy form's fields back into a PUT /policy payload */
export function policyUpdateFromForm(
  thresholds: Record<string, string>,
  lists: Record<string, string>,
): Partial<PolicyDoc> {
  const policy: Record<string, number> = {};
  for (const [key, raw] of Object.entries(thresholds)) {
    if (raw.trim() !== "") policy[key] = Number(raw);
  }
  const stemmer_config: Record<string, string[]> = {};
  for (const [key, raw] of Object.entries(lists)) {
    stemmer_config[key] = raw
      .split("\n")
      .map((line) => line.trim())
      .filter((line) => line.length > 0);
  }
  return { policy, stemmer_config };
}
