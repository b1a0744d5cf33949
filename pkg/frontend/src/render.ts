/**
 * Pure HTML renderers. Each function maps an API payload to a markup
 * string and nothing else — every number and label on screen comes
 * straight out of a server response. Dynamic text is HTML-escaped and
 * wrapped in <bdi> so ids and numbers cannot corrupt the RTL layout.
 */

import type { AnswerResult, PendingSubmission, PolicyDoc, QuestionInfo } from "./api.js";

export function escapeHtml(value: string): string {
  return value
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

/** bidi-isolated, escaped inline value */
export function bdi(value: string | number): string {
  return `<bdi>${escapeHtml(String(value))}</bdi>`;
}

/** numbers are shown exactly as the API sent them, trimmed of float noise */
export function formatNumber(value: number): string {
  const rounded = Math.round(value * 10000) / 10000;
  return String(rounded);
}

const TIER_LABELS: Record<string, string> = {
  exact: "مطابقة تامة",
  near_exact: "شبه تامة",
  partial: "جزئية",
  none: "لا تطابق",
  unmatched: "غير موجودة",
};

export function tierLabel(tier: string): string {
  return TIER_LABELS[tier] ?? tier;
}

const CLASSIFICATION_LABELS: Record<string, string> = {
  full_mark: "علامة كاملة",
  correct: "إجابة صحيحة",
  needs_review: "تحتاج مراجعة",
  wrong: "إجابة خاطئة",
};

export function classificationLabel(classification: string): string {
  return CLASSIFICATION_LABELS[classification] ?? classification;
}

export function renderQuestion(question: QuestionInfo): string {
  return [
    `<div class="question" data-question-id="${escapeHtml(question.question_id)}">`,
    `<p class="question-progress">سؤال ${bdi(question.index + 1)} من ${bdi(question.total_questions)}`,
    ` (${bdi(formatNumber(question.max_points))} نقاط)</p>`,
    `<p class="question-prompt">${bdi(question.prompt)}</p>`,
    `</div>`,
  ].join("");
}

export function renderAnswerResult(result: AnswerResult): string {
  if (result.marks_withheld) {
    return `<div class="result withheld">تم استلام إجابتك وستظهر العلامة بعد المراجعة.</div>`;
  }
  const classification = result.classification ?? "";
  return [
    `<div class="result ${escapeHtml(classification)}">`,
    `<p class="result-points">${bdi(formatNumber(result.points ?? 0))} / ${bdi(formatNumber(result.max_points))}</p>`,
    `<p class="result-classification" data-classification="${escapeHtml(classification)}">`,
    `${bdi(classification)} — ${bdi(classificationLabel(classification))}</p>`,
    `</div>`,
  ].join("");
}

export function renderAuditTable(grade: PendingSubmission["grade"]): string {
  const rows = grade.matches
    .map((m) => {
      const student = m.student_stem === null ? "—" : m.student_stem;
      return (
        `<tr class="tier-${escapeHtml(m.tier)}">` +
        `<td>${bdi(m.correct_word)}</td>` +
        `<td>${bdi(m.correct_stem)}</td>` +
        `<td>${m.student_stem === null ? "—" : bdi(student)}</td>` +
        `<td>${bdi(formatNumber(m.similarity))}</td>` +
        `<td>${bdi(m.tier)}</td>` +
        `<td>${bdi(formatNumber(m.credit))}</td>` +
        `</tr>`
      );
    })
    .join("");
  return (
    `<table class="audit">` +
    `<thead><tr><th>كلمة النموذج</th><th>الجذع</th><th>جذع الطالب</th>` +
    `<th>التشابه</th><th>التصنيف</th><th>النقاط</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>`
  );
}

export function renderQueueEntry(entry: PendingSubmission): string {
  const prompt = entry.question ? entry.question.prompt : "";
  const maxPoints = entry.question ? entry.question.max_points : 0;
  return [
    `<article class="pending" data-submission-id="${escapeHtml(entry.submission_id)}">`,
    `<header>`,
    `<span class="student">${bdi(entry.student_id)}</span>`,
    `<span class="mark">${bdi(formatNumber(entry.grade.mark_sum))}</span>`,
    `<span class="classification">${bdi(entry.grade.classification)}</span>`,
    `</header>`,
    `<p class="prompt">${bdi(prompt)}</p>`,
    `<p class="answer">${bdi(entry.answer_text)}</p>`,
    renderAuditTable(entry.grade),
    `<form class="decision" data-max-points="${escapeHtml(formatNumber(maxPoints))}">`,
    `<label>العلامة النهائية <input name="final_points" type="number" inputmode="decimal"`,
    ` min="0" max="${escapeHtml(formatNumber(maxPoints))}" step="any" required></label>`,
    `<label>ملاحظة <input name="note" type="text"></label>`,
    `<button type="submit">اعتماد</button>`,
    `</form>`,
    `</article>`,
  ].join("");
}

export function renderQueue(pending: PendingSubmission[]): string {
  if (pending.length === 0) {
    return `<p class="queue-empty">لا توجد إجابات بانتظار المراجعة.</p>`;
  }
  return pending.map(renderQueueEntry).join("");
}

export function renderPolicyForm(doc: PolicyDoc): string {
  const policyInputs = Object.entries(doc.policy)
    .map(
      ([key, value]) =>
        `<label>${escapeHtml(key)} <input name="${escapeHtml(key)}" type="number"` +
        ` step="any" value="${escapeHtml(formatNumber(value))}"></label>`,
    )
    .join("");
  const lists = ["stop_words", "al_prefixes", "heavy_prefixes", "heavy_suffixes", "light_suffixes"]
    .map((name) => {
      const entries = (doc.stemmer_config[name] as string[] | undefined) ?? [];
      return (
        `<label class="word-list">${escapeHtml(name)}` +
        `<textarea name="${escapeHtml(name)}" rows="4">${escapeHtml(entries.join("\n"))}</textarea></label>`
      );
    })
    .join("");
  return [
    `<form class="policy" data-mode="${escapeHtml(doc.mode)}">`,
    `<fieldset class="thresholds"><legend>العتبات</legend>${policyInputs}</fieldset>`,
    `<fieldset class="lists"><legend>قوائم الكلمات</legend>${lists}</fieldset>`,
    `<button type="submit">حفظ</button>`,
    `</form>`,
  ].join("");
}

export function renderError(message: string): string {
  return `<p class="error" role="alert">${bdi(message)}</p>`;
}
