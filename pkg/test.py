import requests
import json

# API endpoint
BASE_URL = "http://localhost:8000"

# Undirected loopless graphs without isolated vertices on 3 vertices
problem = """
domain 3
sentence forall x: forall y: (E(x,y) -> E(y,x)) & ~E(x,x)
sentence forall x: exists y: E(x,y)
"""

print("\nCounting...")
response = requests.post(f"{BASE_URL}/count", json={"problem": problem})
print(f"Status: {response.status_code}")
print(json.dumps(response.json(), indent=2))

print("\nSampling...")
response = requests.post(
    f"{BASE_URL}/sample",
    json={"problem": problem, "num_samples": 2000, "seed": 7, "validate_samples": True},
)
print(f"Status: {response.status_code}")
if response.status_code == 200:
    body = response.json()
    print(json.dumps(body["samples"][:3], indent=2))
    print(json.dumps(body["validation"], indent=2))
else:
    print(f"Error: {response.text}")

print("\nPresets...")
for name in ["two-colored-graphs", "k-regular", "friends-smokers"]:
    response = requests.get(f"{BASE_URL}/presets/{name}", params={"n": 4})
    print(f"{name}: {response.status_code}")
    print(response.json().get("text", response.text))

# These should fail: a parse error (400) and an unsatisfiable sentence (422)
for text in ["domain 3\nsentence forall x: E(x", "domain 2\nsentence forall x: P(x) & ~P(x)"]:
    response = requests.post(f"{BASE_URL}/count", json={"problem": text})
    print(f"\nStatus: {response.status_code}")
    print(json.dumps(response.json(), indent=2))

response = requests.get(f"{BASE_URL}/logs/workflows")
print(f"\n{len(response.json())} workflow logs")
