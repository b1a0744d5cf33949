"""The whole exam loop against the HTTP service, in one process.

Creates an exam, opens a student session, submits an answer, then walks
the instructor review queue — exactly what the web UI does.

Run: python demos/05_exam_service.py
"""

import json
import tempfile

from fastapi.testclient import TestClient

from arascore.service import ServiceConfig, create_app

INSTRUCTOR = {"Authorization": "Bearer demo-instructor"}
STUDENT = {"Authorization": "Bearer demo-student"}

with tempfile.TemporaryDirectory() as tmp:
    config = ServiceConfig(
        store_path=tmp + "/store",
        instructor_token="demo-instructor",
        student_token="demo-student",
    )
    client = TestClient(create_app(config))

    exam_id = client.post("/api/exams", headers=INSTRUCTOR, json={
        "title": "اختبار الأدب",
        "mode": "heavy",
        "questions": [{
            "question_id": "q1",
            "prompt": "اكمل البيت التالي ... أقول لأصحابي ارفعوني فإنني",
            "model_answer": "يقر بعيني أن سهيل بدا ليا",
            "max_points": 10,
        }],
    }).json()["exam_id"]
    print("created exam", exam_id)

    session = client.post("/api/sessions", headers=STUDENT,
                          json={"exam_id": exam_id, "student_id": "student-7"}).json()
    print("opened session for", session["student_id"])

    question = client.get(f"/api/exams/{exam_id}/questions/0",
                          headers={"Authorization": f"Bearer {session['token']}"}).json()
    print("question prompt:", question["prompt"])

    answer = client.post(f"/api/sessions/{session['token']}/answers",
                         json={"question_id": "q1",
                               "answer_text": "يقر بعيني ان سهيل بدا"}).json()
    print(f"graded: {answer['points']:g}/{answer['max_points']:g} points "
          f"({answer['classification']})")

    queue = client.get("/api/review-queue", headers=INSTRUCTOR).json()["pending"]
    print("\nreview queue:")
    for entry in queue:
        print(" ", entry["submission_id"], "by", entry["student_id"])
        for m in entry["grade"]["matches"]:
            print(f"    {m['correct_stem']:>6} <- {m['student_stem'] or '—':>6} "
                  f"tier={m['tier']} credit={m['credit']:g}")

    decision = client.post(f"/api/review/{queue[0]['submission_id']}",
                           headers=INSTRUCTOR,
                           json={"reviewer_id": "teacher-1", "final_points": 9,
                                 "note": "إجابة شبه كاملة"})
    print("\nreview recorded:", decision.json())
    print("queue after review:",
          client.get("/api/review-queue", headers=INSTRUCTOR).json()["pending"])
