from beltrami_cert.app import Certifier

if __name__ == "__main__":
    report = Certifier().certify_pipeline()
    raise SystemExit(0 if report.certified else 1)
