/**
 * Typed client for the exam service HTTP API. Every screen talks to the
 * server exclusively through this module; no grading math happens in the
 * browser. `fetchFn` is injectable so tests can intercept all traffic.
 */

export interface WordMatchDoc {
  correct_stem: string;
  correct_word: string;
  correct_index: number;
  student_stem: string | null;
  student_word: string | null;
  student_index: number | null;
  similarity: number;
  tier: "exact" | "near_exact" | "partial" | "none" | "unmatched";
  credit: number;
}

export interface GradeDoc {
  mark_sum: number;
  word_weight: number;
  classification: string;
  mode: string;
  matches: WordMatchDoc[];
}

export interface SessionInfo {
  token: string;
  expires_at: string;
  exam_id: string;
  student_id: string;
  title: string;
  total_questions: number;
  first_question_id: string;
}

export interface QuestionInfo {
  question_id: string;
  index: number;
  total_questions: number;
  prompt: string;
  max_points: number;
}

export interface AnswerResult {
  submission_id: string;
  question_id: string;
  next_question_id: string | null;
  max_points: number;
  mark_sum?: number;
  points?: number;
  classification?: string;
  marks_withheld?: boolean;
}

export interface PendingSubmission {
  submission_id: string;
  exam_id: string;
  question_id: string;
  student_id: string;
  answer_text: string;
  submitted_at: string;
  grade_version: number;
  grade: GradeDoc;
  question: { question_id: string; prompt: string; model_answer: string; max_points: number } | null;
  exam_title: string | null;
}

export interface PolicyDoc {
  mode: string;
  reveal_marks: boolean;
  policy: Record<string, number>;
  stemmer_config: Record<string, unknown>;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface ClientOptions {
  baseUrl: string;
  instructorToken?: string;
  studentToken?: string;
  fetchFn?: FetchLike;
}

async function parseError(response: Response): Promise<ApiError> {
  let code = "unknown_error";
  let message = `HTTP ${response.status}`;
  try {
    const body = await response.json();
    if (body && body.detail) {
      code = body.detail.code ?? code;
      message = body.detail.message ?? message;
    }
  } catch {
    /* non-JSON error body; keep defaults */
  }
  return new ApiError(response.status, code, message);
}

export class ExamApiClient {
  private readonly fetchFn: FetchLike;

  constructor(private readonly options: ClientOptions) {
    this.fetchFn = options.fetchFn ?? ((url, init) => fetch(url, init));
  }

  private async request<T>(path: string, init: RequestInit = {}, token?: string): Promise<T> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (token) headers["Authorization"] = `Bearer ${token}`;
    const response = await this.fetchFn(this.options.baseUrl + path, { ...init, headers });
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  openSession(examId: string, studentId: string): Promise<SessionInfo> {
    return this.request<SessionInfo>(
      "/api/sessions",
      { method: "POST", body: JSON.stringify({ exam_id: examId, student_id: studentId }) },
      this.options.studentToken,
    );
  }

  getQuestion(examId: string, index: number, sessionToken: string): Promise<QuestionInfo> {
    return this.request<QuestionInfo>(
      `/api/exams/${encodeURIComponent(examId)}/questions/${index}`,
      {},
      sessionToken,
    );
  }

  submitAnswer(sessionToken: string, questionId: string, answerText: string): Promise<AnswerResult> {
    return this.request<AnswerResult>(
      `/api/sessions/${encodeURIComponent(sessionToken)}/answers`,
      { method: "POST", body: JSON.stringify({ question_id: questionId, answer_text: answerText }) },
    );
  }

  reviewQueue(examId?: string): Promise<{ pending: PendingSubmission[] }> {
    const query = examId ? `?exam_id=${encodeURIComponent(examId)}` : "";
    return this.request<{ pending: PendingSubmission[] }>(
      `/api/review-queue${query}`,
      {},
      this.options.instructorToken,
    );
  }

  postReview(
    submissionId: string,
    reviewerId: string,
    finalPoints: number,
    note: string,
  ): Promise<{ status: string; submission_id: string }> {
    return this.request(
      `/api/review/${encodeURIComponent(submissionId)}`,
      {
        method: "POST",
        body: JSON.stringify({ reviewer_id: reviewerId, final_points: finalPoints, note }),
      },
      this.options.instructorToken,
    );
  }

  getPolicy(examId: string): Promise<PolicyDoc> {
    return this.request<PolicyDoc>(
      `/api/exams/${encodeURIComponent(examId)}/policy`,
      {},
      this.options.instructorToken,
    );
  }

  putPolicy(examId: string, update: Partial<PolicyDoc>): Promise<PolicyDoc> {
    return this.request<PolicyDoc>(
      `/api/exams/${encodeURIComponent(examId)}/policy`,
      { method: "PUT", body: JSON.stringify(update) },
      this.options.instructorToken,
    );
  }
}
