"""HTTP exam service: question delivery, synchronous grading, review loop.

Authentication uses two static bearer tokens configured at startup: the
student token may only open sessions (and the short-lived session tokens
it yields drive answering), while the instructor token controls exam
creation, the review queue and policy editing. Model answers are never
included in any response reachable with a student or session token.
"""

from __future__ import annotations

import json
import logging
import os
import secrets
import time
import uuid
from dataclasses import dataclass
from datetime import datetime, timedelta
from pathlib import Path

from fastapi import Body, FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware

from .scoring import EmptyModelAnswerError, GradingPolicy, grade
from .stemming import ConfigError, StemMode, StemmerConfig
from .store import (
    AlreadyReviewedError,
    Exam,
    ExamNotFoundError,
    ExamStore,
    InvalidExamError,
    Question,
    ReviewDecision,
    Submission,
    SubmissionNotFoundError,
    utcnow,
)

logger = logging.getLogger("arascore.service")

ENV_PREFIX = "ARASCORE_"


class ServiceConfigError(ValueError):
    pass


@dataclass
class ServiceConfig:
    store_path: str = "exam-store"
    instructor_token: str = ""
    student_token: str = ""
    host: str = "127.0.0.1"
    port: int = 8000
    session_ttl_minutes: int = 120

    @classmethod
    def load(cls, path: str | Path | None = None, env: dict | None = None) -> "ServiceConfig":
        """Read the JSON config file, then apply environment overrides."""
        env = os.environ if env is None else env
        doc: dict = {}
        if path is not None:
            try:
                doc = json.loads(Path(path).read_text(encoding="utf-8-sig"))
            except (OSError, json.JSONDecodeError) as exc:
                raise ServiceConfigError(f"cannot read config file {path}: {exc}") from exc
        config = cls(
            store_path=doc.get("store_path", cls.store_path),
            instructor_token=doc.get("instructor_token", ""),
            student_token=doc.get("student_token", ""),
            session_ttl_minutes=doc.get("session_ttl_minutes", cls.session_ttl_minutes),
        )
        listen = env.get(ENV_PREFIX + "LISTEN", doc.get("listen"))
        if listen:
            host, _, port = str(listen).rpartition(":")
            if not host or not port.isdigit():
                raise ServiceConfigError(f"listen address must be host:port, got {listen!r}")
            config.host, config.port = host, int(port)
        config.store_path = env.get(ENV_PREFIX + "STORE_PATH", config.store_path)
        config.instructor_token = env.get(ENV_PREFIX + "INSTRUCTOR_TOKEN", config.instructor_token)
        config.student_token = env.get(ENV_PREFIX + "STUDENT_TOKEN", config.student_token)
        if ENV_PREFIX + "SESSION_TTL_MINUTES" in env:
            config.session_ttl_minutes = int(env[ENV_PREFIX + "SESSION_TTL_MINUTES"])
        return config

    def validate(self) -> None:
        if not self.instructor_token or not self.student_token:
            raise ServiceConfigError("both instructor_token and student_token must be set")
        if self.instructor_token == self.student_token:
            raise ServiceConfigError("instructor_token and student_token must differ")


@dataclass
class Session:
    token: str
    student_id: str
    exam_id: str
    expires_at: datetime


def _error(status: int, code: str, message: str) -> HTTPException:
    return HTTPException(status_code=status, detail={"code": code, "message": message})


def _bearer(request: Request) -> str | None:
    header = request.headers.get("authorization", "")
    scheme, _, token = header.partition(" ")
    if scheme.lower() == "bearer" and token:
        return token.strip()
    return None


def create_app(config: ServiceConfig) -> FastAPI:
    config.validate()
    store = ExamStore(config.store_path)
    sessions: dict[str, Session] = {}
    app = FastAPI(title="arascore exam service", docs_url=None, redoc_url=None)
    app.state.store = store
    app.state.sessions = sessions
    # the browser front end is usually served from another origin; auth is
    # bearer-token based, so reflecting any origin is safe here
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["Authorization", "Content-Type"],
    )

    # -- helpers -----------------------------------------------------------

    def require_instructor(request: Request) -> None:
        if _bearer(request) != config.instructor_token:
            raise _error(401, "unauthorized", "instructor token required")

    def require_student_issuer(request: Request) -> None:
        if _bearer(request) != config.student_token:
            raise _error(401, "unauthorized", "student token required")

    def active_session(token: str) -> Session:
        session = sessions.get(token)
        if session is None or session.expires_at <= utcnow():
            sessions.pop(token, None)
            raise _error(401, "invalid_session", "session token invalid or expired")
        return session

    def load_exam_or_404(exam_id: str) -> Exam:
        try:
            return store.load_exam(exam_id)
        except ExamNotFoundError as exc:
            raise _error(404, exc.code, str(exc))

    def answer_response(exam: Exam, submission: Submission) -> dict:
        question = exam.question(submission.question_id)
        payload = {
            "submission_id": submission.submission_id,
            "question_id": submission.question_id,
            "next_question_id": exam.next_question_id(submission.question_id),
            "max_points": question.max_points if question else None,
        }
        if exam.reveal_marks:
            payload["mark_sum"] = submission.grade.mark_sum
            payload["points"] = submission.grade.mark_sum * question.max_points
            payload["classification"] = submission.grade.classification.value
        else:
            payload["marks_withheld"] = True
        return payload

    @app.middleware("http")
    async def log_requests(request: Request, call_next):
        started = time.perf_counter()
        response = await call_next(request)
        logger.info(
            json.dumps(
                {
                    "method": request.method,
                    "path": request.url.path,
                    "status": response.status_code,
                    "duration_ms": round((time.perf_counter() - started) * 1000, 2),
                }
            )
        )
        return response

    # -- instructor: exams and policy ---------------------------------------

    @app.post("/api/exams", status_code=201)
    def create_exam(request: Request, payload: dict = Body(...)):
        require_instructor(request)
        try:
            questions = tuple(
                Question(
                    question_id=q.get("question_id") or uuid.uuid4().hex,
                    prompt=q["prompt"],
                    model_answer=q["model_answer"],
                    max_points=float(q["max_points"]),
                )
                for q in payload.get("questions", [])
            )
            exam = Exam(
                exam_id=payload.get("exam_id") or uuid.uuid4().hex,
                title=payload.get("title", ""),
                mode=StemMode(payload.get("mode", "heavy")),
                policy=GradingPolicy.from_doc(payload.get("policy", {})),
                config=StemmerConfig.from_doc(payload.get("stemmer_config", {})),
                questions=questions,
                reveal_marks=bool(payload.get("reveal_marks", True)),
            )
            store.save_exam(exam)
        except (KeyError, TypeError) as exc:
            raise _error(400, "invalid_exam", f"malformed exam document: {exc}")
        except ValueError as exc:  # bad mode, bad numbers, policy/config errors
            code = "empty_model_answer" if isinstance(exc, EmptyModelAnswerError) else "invalid_exam"
            raise _error(400, code, str(exc))
        except InvalidExamError as exc:
            raise _error(400, exc.code, str(exc))
        return {"exam_id": exam.exam_id, "question_ids": [q.question_id for q in exam.questions]}

    @app.get("/api/exams/{exam_id}")
    def get_exam(exam_id: str, request: Request):
        require_instructor(request)
        return load_exam_or_404(exam_id).to_doc()

    @app.get("/api/exams/{exam_id}/policy")
    def get_policy(exam_id: str, request: Request):
        require_instructor(request)
        exam = load_exam_or_404(exam_id)
        return {
            "mode": exam.mode.value,
            "reveal_marks": exam.reveal_marks,
            "policy": exam.policy.to_doc(),
            "stemmer_config": exam.config.to_doc(),
        }

    @app.put("/api/exams/{exam_id}/policy")
    def put_policy(exam_id: str, request: Request, payload: dict = Body(...)):
        require_instructor(request)
        exam = load_exam_or_404(exam_id)
        policy_doc = exam.policy.to_doc()
        policy_doc.update(payload.get("policy", {}))
        config_doc = exam.config.to_doc()
        config_doc.update(payload.get("stemmer_config", {}))
        try:
            updated = Exam(
                exam_id=exam.exam_id,
                title=exam.title,
                mode=exam.mode,
                policy=GradingPolicy.from_doc(policy_doc),
                config=StemmerConfig.from_doc(config_doc),
                questions=exam.questions,
                reveal_marks=bool(payload.get("reveal_marks", exam.reveal_marks)),
            )
            store.save_exam(updated)
        except EmptyModelAnswerError as exc:
            raise _error(400, "empty_model_answer", str(exc))
        except (ConfigError, InvalidExamError, TypeError) as exc:
            raise _error(400, "invalid_policy", str(exc))
        return {
            "mode": updated.mode.value,
            "reveal_marks": updated.reveal_marks,
            "policy": updated.policy.to_doc(),
            "stemmer_config": updated.config.to_doc(),
        }

    # -- student flow ----------------------------------------------------------

    @app.get("/api/exams/{exam_id}/questions/{index}")
    def get_question(exam_id: str, index: int, request: Request):
        token = _bearer(request)
        if token != config.instructor_token:
            session = active_session(token or "")
            if session.exam_id != exam_id:
                raise _error(401, "invalid_session", "session not valid for this exam")
        exam = load_exam_or_404(exam_id)
        if index < 0 or index >= len(exam.questions):
            raise _error(404, "question_not_found", f"no question at index {index}")
        question = exam.questions[index]
        return {
            "question_id": question.question_id,
            "index": index,
            "total_questions": len(exam.questions),
            "prompt": question.prompt,
            "max_points": question.max_points,
        }

    @app.post("/api/sessions", status_code=201)
    def open_session(request: Request, payload: dict = Body(...)):
        require_student_issuer(request)
        exam_id = payload.get("exam_id")
        student_id = payload.get("student_id")
        if not exam_id or not student_id:
            raise _error(400, "invalid_request", "exam_id and student_id are required")
        exam = load_exam_or_404(exam_id)
        session = Session(
            token=secrets.token_hex(16),
            student_id=student_id,
            exam_id=exam_id,
            expires_at=utcnow() + timedelta(minutes=config.session_ttl_minutes),
        )
        sessions[session.token] = session
        return {
            "token": session.token,
            "expires_at": session.expires_at.isoformat(),
            "exam_id": exam_id,
            "student_id": student_id,
            "title": exam.title,
            "total_questions": len(exam.questions),
            "first_question_id": exam.questions[0].question_id,
        }

    @app.post("/api/sessions/{token}/answers", status_code=201)
    def submit_answer(token: str, payload: dict = Body(...)):
        session = active_session(token)
        exam = load_exam_or_404(session.exam_id)
        question_id = payload.get("question_id")
        answer_text = payload.get("answer_text")
        if not question_id or answer_text is None:
            raise _error(400, "invalid_request", "question_id and answer_text are required")
        question = exam.question(question_id)
        if question is None:
            raise _error(404, "question_not_found", f"question {question_id} not in exam")

        submission_id = payload.get("submission_id")
        if submission_id:
            try:
                existing = store.load_submission(submission_id)
            except SubmissionNotFoundError:
                existing = None
            if existing is not None:
                same_answer = (
                    existing.exam_id == session.exam_id
                    and existing.question_id == question_id
                    and existing.student_id == session.student_id
                )
                if not same_answer:
                    raise _error(409, "submission_id_conflict", "submission_id already used")
                return answer_response(exam, existing)  # idempotent retry

        previous = store.find_submission(session.exam_id, question_id, session.student_id)
        if previous is not None:
            raise _error(409, "duplicate_answer", "this question was already answered")

        try:
            result = grade(answer_text, question.model_answer, exam.mode, exam.config, exam.policy)
        except EmptyModelAnswerError as exc:
            raise _error(400, "empty_model_answer", str(exc))
        submission = Submission(
            submission_id=submission_id or uuid.uuid4().hex,
            exam_id=session.exam_id,
            question_id=question_id,
            student_id=session.student_id,
            answer_text=answer_text,
            grade=result,
        )
        store.record_submission(submission)
        return answer_response(exam, submission)

    # -- instructor: review loop ---------------------------------------------

    @app.get("/api/review-queue")
    def review_queue(request: Request, exam_id: str | None = None):
        require_instructor(request)
        pending = []
        for submission in store.pending_reviews(exam_id):
            try:
                exam = store.load_exam(submission.exam_id)
                question = exam.question(submission.question_id)
            except ExamNotFoundError:
                exam, question = None, None
            doc = submission.to_doc()
            doc["question"] = question.to_doc() if question else None
            doc["exam_title"] = exam.title if exam else None
            pending.append(doc)
        return {"pending": pending}

    @app.post("/api/review/{submission_id}", status_code=201)
    def post_review(submission_id: str, request: Request, payload: dict = Body(...)):
        require_instructor(request)
        try:
            decision = ReviewDecision(
                reviewer_id=payload["reviewer_id"],
                final_points=float(payload["final_points"]),
                note=payload.get("note", ""),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise _error(400, "invalid_request", f"malformed review: {exc}")
        try:
            store.record_review(submission_id, decision)
        except SubmissionNotFoundError as exc:
            raise _error(404, exc.code, str(exc))
        except AlreadyReviewedError as exc:
            raise _error(409, exc.code, str(exc))
        except InvalidExamError as exc:
            raise _error(400, "invalid_points", str(exc))
        return {"status": "recorded", "submission_id": submission_id}

    return app


def run(config: ServiceConfig) -> None:
    """Blocking entry point used by the CLI ``serve`` command."""
    import uvicorn

    logging.basicConfig(level=logging.INFO, format="%(message)s")
    uvicorn.run(create_app(config), host=config.host, port=config.port, log_level="info")
