/**
 * DOM bootstrap: wires the exam, review and policy screens to the API
 * client. All markup comes from render.ts; all state transitions from
 * screens.ts; this file only moves strings in and out of the page.
 */

import { ApiError, ExamApiClient, PendingSubmission, SessionInfo } from "./api.js";
import {
  renderAnswerResult,
  renderError,
  renderPolicyForm,
  renderQueue,
  renderQuestion,
} from "./render.js";
import {
  advanceProgress,
  ExamProgress,
  policyUpdateFromForm,
  removeFromQueue,
  startProgress,
  validateAnswer,
  validateFinalPoints,
} from "./screens.js";

const REVIEW_POLL_MS = 5000;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function clientFromSettings(): ExamApiClient {
  return new ExamApiClient({
    baseUrl: (el<HTMLInputElement>("server-url").value || "").replace(/\/$/, ""),
    instructorToken: el<HTMLInputElement>("instructor-token").value || undefined,
    studentToken: el<HTMLInputElement>("student-token").value || undefined,
  });
}

function showError(target: HTMLElement, error: unknown): void {
  const message = error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
  target.innerHTML = renderError(message);
}

// -- tabs ---------------------------------------------------------------

function initTabs(): void {
  document.querySelectorAll<HTMLButtonElement>("nav button").forEach((button) => {
    button.addEventListener("click", () => {
      document.querySelectorAll("nav button").forEach((b) => b.classList.remove("active"));
      document.querySelectorAll<HTMLElement>("main > section").forEach((section) => {
        section.hidden = section.id !== button.dataset.target;
      });
      button.classList.add("active");
    });
  });
}

// -- exam screen -------------------------------------------------------------

let session: SessionInfo | null = null;
let progress: ExamProgress | null = null;

async function loadCurrentQuestion(): Promise<void> {
  if (!session || !progress || progress.finished) return;
  const client = clientFromSettings();
  const question = await client.getQuestion(session.exam_id, progress.questionIndex, session.token);
  el("exam-question").innerHTML = renderQuestion(question);
  el<HTMLInputElement>("answer-question-id").value = question.question_id;
  el<HTMLTextAreaElement>("answer-text").value = "";
  el("answer-form").hidden = false;
}

function initExamScreen(): void {
  el<HTMLFormElement>("session-form").addEventListener("submit", async (event) => {
    event.preventDefault();
    const feedback = el("exam-feedback");
    feedback.innerHTML = "";
    try {
      session = await clientFromSettings().openSession(
        el<HTMLInputElement>("exam-id").value.trim(),
        el<HTMLInputElement>("student-id").value.trim(),
      );
      progress = startProgress(session.total_questions);
      el("exam-title").textContent = session.title;
      await loadCurrentQuestion();
    } catch (error) {
      showError(feedback, error);
    }
  });

  el<HTMLFormElement>("answer-form").addEventListener("submit", async (event) => {
    event.preventDefault();
    const feedback = el("exam-feedback");
    const answerText = el<HTMLTextAreaElement>("answer-text").value;
    const problem = validateAnswer(answerText);
    if (problem) {
      feedback.innerHTML = renderError(problem);
      return;
    }
    if (!session || !progress) return;
    try {
      const result = await clientFromSettings().submitAnswer(
        session.token,
        el<HTMLInputElement>("answer-question-id").value,
        answerText,
      );
      feedback.innerHTML = renderAnswerResult(result);
      progress = advanceProgress(progress);
      if (progress.finished) {
        el("answer-form").hidden = true;
        el("exam-question").innerHTML = "<p>انتهى الاختبار، شكراً لك.</p>";
      } else {
        await loadCurrentQuestion();
      }
    } catch (error) {
      showError(feedback, error);
    }
  });
}

// -- review screen -----------------------------------------------------------

let pendingQueue: PendingSubmission[] = [];
let pollTimer: number | undefined;

function paintQueue(): void {
  el("review-queue").innerHTML = renderQueue(pendingQueue);
  document.querySelectorAll<HTMLFormElement>("#review-queue form.decision").forEach((form) => {
    form.addEventListener("submit", (event) => void submitDecision(event, form));
  });
}

async function refreshQueue(): Promise<void> {
  const examId = el<HTMLInputElement>("review-exam-id").value.trim();
  try {
    const body = await clientFromSettings().reviewQueue(examId || undefined);
    pendingQueue = body.pending;
    paintQueue();
  } catch (error) {
    showError(el("review-feedback"), error);
  }
}

async function submitDecision(event: Event, form: HTMLFormElement): Promise<void> {
  event.preventDefault();
  const article = form.closest<HTMLElement>("article.pending");
  if (!article) return;
  const submissionId = article.dataset.submissionId ?? "";
  const maxPoints = Number(form.dataset.maxPoints ?? "0");
  const pointsRaw = (form.elements.namedItem("final_points") as HTMLInputElement).value;
  const note = (form.elements.namedItem("note") as HTMLInputElement).value;
  const problem = validateFinalPoints(pointsRaw, maxPoints);
  const feedback = el("review-feedback");
  if (problem) {
    feedback.innerHTML = renderError(problem);
    return;
  }
  try {
    await clientFromSettings().postReview(
      submissionId,
      el<HTMLInputElement>("reviewer-id").value.trim() || "reviewer",
      Number(pointsRaw),
      note,
    );
    pendingQueue = removeFromQueue(pendingQueue, submissionId);
    paintQueue();
    feedback.innerHTML = "";
  } catch (error) {
    if (error instanceof ApiError && error.status === 409) {
      // someone else reviewed it first; reconcile with the server
      await refreshQueue();
      return;
    }
    showError(feedback, error);
  }
}

function initReviewScreen(): void {
  el("review-refresh").addEventListener("click", () => void refreshQueue());
  el<HTMLInputElement>("review-poll").addEventListener("change", (event) => {
    const enabled = (event.target as HTMLInputElement).checked;
    if (pollTimer !== undefined) window.clearInterval(pollTimer);
    pollTimer = enabled
      ? window.setInterval(() => void refreshQueue(), REVIEW_POLL_MS)
      : undefined;
  });
}

// -- policy screen -------------------------------------------------------------

function initPolicyScreen(): void {
  el("policy-load").addEventListener("click", async () => {
    const feedback = el("policy-feedback");
    try {
      const doc = await clientFromSettings().getPolicy(
        el<HTMLInputElement>("policy-exam-id").value.trim(),
      );
      el("policy-editor").innerHTML = renderPolicyForm(doc);
      const form = el<HTMLFormElement>("policy-editor").querySelector("form.policy");
      form?.addEventListener("submit", async (event) => {
        event.preventDefault();
        const thresholds: Record<string, string> = {};
        const lists: Record<string, string> = {};
        form.querySelectorAll<HTMLInputElement>("fieldset.thresholds input").forEach((input) => {
          thresholds[input.name] = input.value;
        });
        form.querySelectorAll<HTMLTextAreaElement>("fieldset.lists textarea").forEach((area) => {
          lists[area.name] = area.value;
        });
        try {
          const updated = await clientFromSettings().putPolicy(
            el<HTMLInputElement>("policy-exam-id").value.trim(),
            policyUpdateFromForm(thresholds, lists),
          );
          el("policy-editor").innerHTML = renderPolicyForm(updated);
          feedback.innerHTML = "<p>تم الحفظ.</p>";
        } catch (error) {
          showError(feedback, error);
        }
      });
    } catch (error) {
      showError(feedback, error);
    }
  });
}

initTabs();
initExamScreen();
initReviewScreen();
initPolicyScreen();
